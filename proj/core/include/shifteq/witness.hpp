#ifndef SHIFTEQ_WITNESS_HPP
#define SHIFTEQ_WITNESS_HPP

#include <optional>
#include <string>

#include "shifteq/intlin.hpp"
#include "shifteq/matrix.hpp"

namespace shifteq {

// Explicit shift-equivalence certificate: R maps the T1 space to the T2
// space, S maps back, and m is the lag. R is n2 x n1, S is n1 x n2.
struct SEWitness {
    IntMatrix R;
    IntMatrix S;
    unsigned long m = 1;
};

enum class SEStatus { Equivalent, NotEquivalent, Unknown };

struct InvariantMismatch {
    std::string invariant;
    std::string lhs, rhs;
};

// Three-valued verdict with machine-checkable evidence. Equivalent carries a
// witness when one was found (class-based verdicts may omit it);
// NotEquivalent names a proven invariant and its two differing values.
struct SEVerdict {
    SEStatus status = SEStatus::Unknown;
    std::optional<SEWitness> witness;
    std::optional<InvariantMismatch> mismatch;
    std::string reason;

    static SEVerdict equivalent(std::optional<SEWitness> w = std::nullopt)
    {
        SEVerdict v;
        v.status = SEStatus::Equivalent;
        v.witness = std::move(w);
        return v;
    }
    static SEVerdict not_equivalent(std::string invariant, std::string lhs, std::string rhs)
    {
        SEVerdict v;
        v.status = SEStatus::NotEquivalent;
        v.mismatch = InvariantMismatch{std::move(invariant), std::move(lhs), std::move(rhs)};
        return v;
    }
    static SEVerdict unknown(std::string why)
    {
        SEVerdict v;
        v.status = SEStatus::Unknown;
        v.reason = std::move(why);
        return v;
    }
};

struct SearchBounds {
    Int entry_bound = 12;
    unsigned long max_lag = 6;
};

// All four axioms, exactly: R T1 = T2 R, S T2 = T1 S, S R = T1^m, R S = T2^m.
// Throws on dimension mismatch.
bool verify_witness(const IntMatrix& T1, const IntMatrix& T2, const SEWitness& w);

// Bounded-complete search: returns a verified witness whenever one exists
// with every entry of R and S bounded by entry_bound and lag <= max_lag;
// nullopt otherwise (which is NOT a proof of inequivalence). Deterministic:
// smallest lag first, then smallest coefficient shell of the commutation
// lattice, lexicographic within a shell.
std::optional<SEWitness> search_witness(const IntMatrix& T1, const IntMatrix& T2,
                                        const SearchBounds& bounds);

// Unimodular P with P T1 P^-1 = T2 and entries bounded, if any.
std::optional<IntMatrix> search_conjugator(const IntMatrix& T1, const IntMatrix& T2,
                                           const Int& entry_bound);

// Witness built from a conjugation T2 = P T1 P^-1: (P, T1 P^-1 ... ) at lag 1.
SEWitness witness_from_conjugation(const IntMatrix& T1, const IntMatrix& P);

// Chains a T1~T2 witness with a T2~T3 witness (lags add).
SEWitness compose_witness(const SEWitness& w12, const SEWitness& w23);

// Reverses direction: a T1~T2 witness read as a T2~T1 witness.
SEWitness reverse_witness(const SEWitness& w);

}  // namespace shifteq

#endif
