// Command-line front end: parses matrices and polynomials, routes to the
// decision procedures, and emits verdicts with machine-checkable
// certificates as JSON.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "shifteq/decide.hpp"
#include "shifteq/finite.hpp"
#include "shifteq/forms.hpp"
#include "shifteq/intlin.hpp"
#include "shifteq/qorder.hpp"
#include "shifteq/split.hpp"
#include "shifteq/textio.hpp"

using namespace shifteq;
using nlohmann::json;

namespace {

constexpr int kExitEquivalent = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInternal = 2;
constexpr int kExitNotEquivalent = 3;
constexpr int kExitUnknown = 4;

json int_to_json(const Int& v)
{
    if (fits_int64(v)) return json(static_cast<long long>(mpz_get_si(v.get_mpz_t())));
    return json(v.get_str());
}

json matrix_json(const IntMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json verdict_json(const SEVerdict& v, const std::string& route, double ms)
{
    json out;
    switch (v.status) {
        case SEStatus::Equivalent: out["verdict"] = "equivalent"; break;
        case SEStatus::NotEquivalent: out["verdict"] = "not_equivalent"; break;
        case SEStatus::Unknown: out["verdict"] = "unknown"; break;
    }
    if (v.witness) {
        out["certificate"] = {{"type", "witness"},
                              {"data",
                               {{"R", matrix_json(v.witness->R)},
                                {"S", matrix_json(v.witness->S)},
                                {"m", v.witness->m}}}};
    } else if (v.mismatch) {
        out["certificate"] = {{"type", "invariant"},
                              {"data",
                               {{"name", v.mismatch->invariant},
                                {"left", v.mismatch->lhs},
                                {"right", v.mismatch->rhs}}}};
    } else if (!v.reason.empty()) {
        out["certificate"] = {{"type", "reason"}, {"data", v.reason}};
    } else {
        out["certificate"] = {{"type", "class_computation"}, {"data", nullptr}};
    }
    out["route"] = route;
    out["timings"] = {{"decide_ms", ms}};
    return out;
}

int verdict_exit(const SEVerdict& v)
{
    switch (v.status) {
        case SEStatus::Equivalent: return kExitEquivalent;
        case SEStatus::NotEquivalent: return kExitNotEquivalent;
        default: return kExitUnknown;
    }
}

SearchBounds bounds_from(long entry_bound, long max_lag)
{
    SearchBounds b;
    if (const char* e = std::getenv("SHIFTEQ_ENTRY_BOUND")) b.entry_bound = Int(e);
    if (const char* e = std::getenv("SHIFTEQ_MAX_LAG")) b.max_lag = std::strtoul(e, nullptr, 10);
    if (entry_bound > 0) b.entry_bound = entry_bound;
    if (max_lag > 0) b.max_lag = static_cast<unsigned long>(max_lag);
    return b;
}

std::pair<IntMatrix, IntMatrix> load_pair(const std::string& t1, const std::string& t2,
                                          const std::string& file)
{
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("cannot open " + file);
        json j = json::parse(in);
        if (!j.is_array() || j.size() != 2)
            throw std::invalid_argument("file must hold a two-matrix JSON array");
        return {parse_matrix(j[0].dump()), parse_matrix(j[1].dump())};
    }
    if (t1.empty() || t2.empty()) throw std::invalid_argument("two matrices required");
    return {parse_matrix(t1), parse_matrix(t2)};
}

void require_square(const IntMatrix& m)
{
    if (!m.is_square()) throw std::invalid_argument("matrix must be square");
}

json classify_quadratic_json(const IntPoly& chi)
{
    json out;
    out["polynomial"] = chi.to_string();
    const Int D = chi.coeff(1) * chi.coeff(1) - 4 * chi.coeff(0);
    if (is_perfect_square(D)) {
        const Int tr = -chi.coeff(1);
        const Int root = isqrt(D);
        const Int l1 = exact_div(tr - root, 2), l2 = exact_div(tr + root, 2);
        if (l1 == 0 || l2 == 0)
            throw std::invalid_argument("classify: zero eigenvalue (strip nilpotent parts)");
        auto cl = classify_split(l1, l2);
        json classes = json::array();
        if (cl.finite) {
            for (const Int& a : cl.representatives) {
                TriangularModule m{l1, l2, a};
                json entry;
                entry["representative"] = matrix_json(m.matrix());
                if (chi == IntPoly{-1, 0, 1}) {
                    auto tag = descent_canonicalize(m.matrix()).tag;
                    entry["tags"] = json::array({tag == InvolutionClass::P ? "P" : "Q"});
                }
                classes.push_back(std::move(entry));
            }
            out["se_count"] = cl.representatives.size();
        } else {
            out["description"] = cl.description;
            json entry;
            entry["representative"] = matrix_json(TriangularModule{l1, l2, 0}.matrix());
            classes.push_back(entry);
            json e1;
            e1["representative"] = matrix_json(TriangularModule{l1, l2, 1}.matrix());
            classes.push_back(e1);
            out["se_count"] = "infinite";
        }
        out["classes"] = std::move(classes);
        out["route"] = "split";
        return out;
    }
    QuadraticOrder ord = order_from_charpoly(chi);
    if (ord.maximal()) {
        auto [iso, se] = class_count(chi);
        json classes = json::array();
        for (const IntMatrix& rep : class_representatives(chi)) {
            json entry;
            entry["representative"] = matrix_json(rep);
            classes.push_back(std::move(entry));
        }
        out["iso_count"] = iso;
        out["se_count"] = se;
        out["classes"] = std::move(classes);
        out["route"] = "quadratic";
        return out;
    }
    if (ord.f == 2) {
        auto cl = classify_conductor2(chi);
        json classes = json::array();
        for (auto& c : cl.classes) {
            json entry;
            entry["representative"] = matrix_json(c.representative);
            json tags = json::array();
            for (auto t : c.members) tags.push_back(tag_name(t));
            entry["tags"] = std::move(tags);
            entry["multiplier_ring"] = c.maximal_side ? "maximal" : "index2";
            entry["se_class"] = c.se_class;
            classes.push_back(std::move(entry));
        }
        out["iso_count"] = cl.iso_count;
        out["se_count"] = cl.se_count;
        out["classes"] = std::move(classes);
        out["route"] = "quadratic";
        return out;
    }
    throw std::invalid_argument("classify: conductor " + ord.f.get_str() + " not supported");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"shift equivalence of integer matrices: decisions, certificates, class tables"};
    app.require_subcommand(1);

    std::string arg_t1, arg_t2, arg_file, arg_poly, arg_format = "json";
    long arg_entry = 0, arg_lag = 0;

    auto* cmd_decide = app.add_subcommand("decide", "decide shift equivalence of two matrices");
    cmd_decide->add_option("T1", arg_t1, "first matrix, JSON rows");
    cmd_decide->add_option("T2", arg_t2, "second matrix, JSON rows");
    cmd_decide->add_option("--file", arg_file, "JSON file with a [T1, T2] array");
    cmd_decide->add_option("--entry-bound", arg_entry, "witness search entry bound");
    cmd_decide->add_option("--max-lag", arg_lag, "witness search lag bound");

    auto* cmd_classify = app.add_subcommand("classify", "class table for a quadratic polynomial");
    cmd_classify->add_option("poly", arg_poly, "characteristic polynomial, e.g. \"t^2-5\"")
        ->required();

    long scan_lo = -100, scan_hi = 100;
    auto* cmd_scan = app.add_subcommand("scan-cjj", "isomorphism table for the conductor-2 family");
    cmd_scan->add_option("c_min", scan_lo, "lowest c");
    cmd_scan->add_option("c_max", scan_hi, "highest c");
    cmd_scan->add_option("--format", arg_format, "tsv or json");

    auto* cmd_witness = app.add_subcommand("witness", "bounded explicit witness search");
    cmd_witness->add_option("T1", arg_t1, "first matrix")->required();
    cmd_witness->add_option("T2", arg_t2, "second matrix")->required();
    cmd_witness->add_option("--entry-bound", arg_entry, "entry bound");
    cmd_witness->add_option("--max-lag", arg_lag, "lag bound");

    auto* cmd_picard = app.add_subcommand("picard", "isomorphism and shift-equivalence counts");
    cmd_picard->add_option("poly", arg_poly, "irreducible quadratic")->required();

    std::string form_abc, form_n;
    auto* cmd_solve = app.add_subcommand("solve-form", "solve a x^2 + b x y + c y^2 = n");
    cmd_solve->add_option("form", form_abc, "form as JSON [a,b,c]")->required();
    cmd_solve->add_option("n", form_n, "target value")->required();

    std::string bf_poly = "1-t";
    auto* cmd_bf = app.add_subcommand("bowen-franks", "cokernel group of f(T)");
    cmd_bf->add_option("T", arg_t1, "matrix")->required();
    cmd_bf->add_option("--poly", bf_poly, "polynomial f, default 1-t");

    long fin_p = 0, fin_n = 1;
    std::string fin_l1 = "1", fin_l2 = "1", fin_a = "0", fin_b;
    auto* cmd_finite = app.add_subcommand("finite", "triangular modules over Z/p^n");
    cmd_finite->add_option("-p,--prime", fin_p, "prime p")->required();
    cmd_finite->add_option("-n,--exponent", fin_n, "exponent n");
    cmd_finite->add_option("--l1", fin_l1, "first eigenvalue");
    cmd_finite->add_option("--l2", fin_l2, "second eigenvalue");
    cmd_finite->add_option("-a", fin_a, "off-diagonal of the first module")->required();
    cmd_finite->add_option("-b", fin_b, "off-diagonal of the second module (decision mode)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_decide->parsed()) {
            auto [T1, T2] = load_pair(arg_t1, arg_t2, arg_file);
            require_square(T1);
            require_square(T2);
            DecideOptions opts;
            opts.bounds = bounds_from(arg_entry, arg_lag);
            DecideOutcome out = decide_matrices(T1, T2, opts);
            std::cout << verdict_json(out.verdict, out.route, out.decide_ms).dump(2) << "\n";
            return verdict_exit(out.verdict);
        }
        if (cmd_classify->parsed()) {
            IntPoly chi = parse_poly(arg_poly);
            if (chi.degree() != 2 || !chi.is_monic())
                throw std::invalid_argument("classify expects a monic quadratic");
            std::cout << classify_quadratic_json(chi).dump(2) << "\n";
            return 0;
        }
        if (cmd_scan->parsed()) {
            if (scan_lo > scan_hi) throw std::invalid_argument("empty scan range");
            json rows = json::array();
            bool tsv = arg_format == "tsv";
            if (tsv) std::cout << "c\tR_iso_J0\tR_iso_J1\tJ0_iso_J1\n";
            for (long c = scan_lo; c <= scan_hi; ++c) {
                bool rj0 = iso_test_R_J0(Int(c));
                bool rj1 = iso_test_R_J1(Int(c));
                bool jj = iso_test_J0_J1(Int(c));
                if (tsv)
                    std::cout << c << "\t" << (rj0 ? "true" : "false") << "\t"
                              << (rj1 ? "true" : "false") << "\t" << (jj ? "true" : "false")
                              << "\n";
                else
                    rows.push_back({{"c", c}, {"R_iso_J0", rj0}, {"R_iso_J1", rj1}, {"J0_iso_J1", jj}});
            }
            if (!tsv) std::cout << rows.dump(2) << "\n";
            return 0;
        }
        if (cmd_witness->parsed()) {
            IntMatrix T1 = parse_matrix(arg_t1), T2 = parse_matrix(arg_t2);
            require_square(T1);
            require_square(T2);
            auto w = search_witness(T1, T2, bounds_from(arg_entry, arg_lag));
            json out;
            if (w) {
                out["found"] = true;
                out["witness"] = {{"R", matrix_json(w->R)}, {"S", matrix_json(w->S)}, {"m", w->m}};
                std::cout << out.dump(2) << "\n";
                return 0;
            }
            out["found"] = false;
            out["note"] = "no witness within bounds; not a proof of inequivalence";
            std::cout << out.dump(2) << "\n";
            return kExitUnknown;
        }
        if (cmd_picard->parsed()) {
            IntPoly chi = parse_poly(arg_poly);
            auto [iso, se] = class_count(chi);
            json out{{"polynomial", chi.to_string()}, {"iso_count", iso}, {"se_count", se}};
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (cmd_solve->parsed()) {
            json fj = json::parse(form_abc);
            if (!fj.is_array() || fj.size() != 3)
                throw std::invalid_argument("form must be [a,b,c]");
            auto cell = [&](int i) {
                return fj[i].is_string() ? Int(fj[i].get<std::string>())
                                         : Int(static_cast<long>(fj[i].get<long long>()));
            };
            BinaryQuadraticForm f{cell(0), cell(1), cell(2)};
            Int n(form_n);
            auto s = represent(f, n);
            json out{{"form", {int_to_json(f.a), int_to_json(f.b), int_to_json(f.c)}},
                     {"n", int_to_json(n)}};
            if (s) {
                out["solvable"] = true;
                out["solution"] = {{"x", int_to_json(s->x)}, {"y", int_to_json(s->y)}};
            } else {
                out["solvable"] = false;
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (cmd_bf->parsed()) {
            IntMatrix T = parse_matrix(arg_t1);
            require_square(T);
            IntPoly f = parse_poly(bf_poly);
            AbelianGroupType g = bowen_franks(T, f);
            json out{{"matrix", matrix_json(T)},
                     {"polynomial", f.to_string()},
                     {"group", g.to_string()},
                     {"free_rank", g.free_rank}};
            json tor = json::array();
            for (const Int& d : g.torsion) tor.push_back(int_to_json(d));
            out["torsion"] = std::move(tor);
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (cmd_finite->parsed()) {
            FiniteTriangularModule m1{Int(fin_p), static_cast<int>(fin_n), Int(fin_l1), Int(fin_l2),
                                      Int(fin_a)};
            if (fin_b.empty()) {
                auto k = classify_single_eigenvalue(m1);
                json out{{"p", fin_p}, {"n", fin_n}};
                out["class"] = k ? json(*k) : json("zero");
                std::cout << out.dump(2) << "\n";
                return 0;
            }
            FiniteTriangularModule m2 = m1;
            m2.a = Int(fin_b);
            SEVerdict v;
            if (mod_floor(m1.lambda1 - m1.lambda2, m1.modulus()) == 0) {
                bool same = classify_single_eigenvalue(m1) == classify_single_eigenvalue(m2);
                v = same ? SEVerdict::equivalent(std::nullopt)
                         : SEVerdict::not_equivalent("unit_orbit", fin_a, fin_b);
            } else {
                v = decide_two_eigenvalues(m1, m2);
            }
            std::cout << verdict_json(v, "finite", 0.0).dump(2) << "\n";
            return verdict_exit(v);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
