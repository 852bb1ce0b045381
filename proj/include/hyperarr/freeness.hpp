#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperarr/constructions.hpp"
#include "hyperarr/lattice.hpp"

namespace hyperarr {

/// Sorted multiset of nonnegative integers; for a certified free arrangement
/// these are the exponents, realized as the roots of chi.
using ExponentMultiset = std::vector<long>;

/// Multiset containment of sorted vectors.
inline bool multiset_contains(const ExponentMultiset& sub, const ExponentMultiset& super) {
    std::size_t j = 0;
    for (long x : sub) {
        while (j < super.size() && super[j] < x) ++j;
        if (j == super.size() || super[j] != x) return false;
        ++j;
    }
    return true;
}

/// Roots of chi(A) when it splits over the nonnegative integers.
inline std::optional<ExponentMultiset> exponents_if_chi_splits(const Arrangement& a) {
    return integer_roots_split(char_poly(a));
}

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

/// One restriction step of a division sequence.
struct DivisionStep {
    Arrangement arrangement; // snapshot before the step
    std::size_t hyperplane;  // chosen H, an index into that snapshot
    CharPoly chi_before;     // chi(arrangement)
    CharPoly chi_after;      // chi(arrangement^H), divides chi_before
};

/// Replayable witness of divisional freeness: consecutive restrictions with
/// dividing characteristic polynomials, ending in a 2-arrangement (or in an
/// empty arrangement, which is divisionally free outright).
struct DivisionCertificate {
    std::vector<DivisionStep> steps;
    Arrangement terminal;
};

/// Node of an induction certificate tree. Leaves are empty arrangements;
/// an internal node records the chosen hyperplane, both children and the
/// exponent multisets of the deletion and the restriction.
struct InductionNode {
    struct Step {
        std::size_t hyperplane;
        ExponentMultiset exp_deleted;
        ExponentMultiset exp_restricted;
        std::shared_ptr<const InductionNode> deleted;
        std::shared_ptr<const InductionNode> restricted;
    };
    Arrangement arrangement;
    std::optional<Step> step; // nullopt = leaf
};

using InductionCertificate = std::shared_ptr<const InductionNode>;

struct DivisionResult {
    bool free = false;
    std::optional<DivisionCertificate> certificate;
};

struct InductionResult {
    bool free = false;
    InductionCertificate certificate; // null unless free
};

struct HereditaryResult {
    bool free = false;
    std::vector<Flat> failing; // flats X with restrict_to(A, X) outside the class
};

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

namespace detail {

inline void check_deadline(const Deadline& deadline) {
    if (deadline && std::chrono::steady_clock::now() > *deadline)
        throw timeout_error("search exceeded its deadline");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Searches
// ---------------------------------------------------------------------------

/// Certificate-producing searches for divisional and inductive freeness.
/// Verdicts, certificates and characteristic polynomials are memoized on the
/// canonical serialized arrangement, so repeated queries (and the recursion
/// itself) stay cheap. Hyperplanes are tried in canonical order and the first
/// success is kept, which makes results deterministic.
class FreenessEngine {
public:
    /// chi(A), cached. Deletion steps inside the induction search seed this
    /// cache through the identity chi(A') = chi(A) + chi(A''), so only
    /// restrictions ever pay for a lattice build there.
    const CharPoly& chi(const Arrangement& a) {
        const std::string& key = a.canonical_key();
        {
            std::lock_guard lock(mutex_);
            auto it = chi_.find(key);
            if (it != chi_.end()) return it->second;
        }
        CharPoly value = char_poly(a);
        std::lock_guard lock(mutex_);
        return chi_.emplace(key, std::move(value)).first->second;
    }

    std::optional<ExponentMultiset> exponents(const Arrangement& a) {
        return integer_roots_split(chi(a));
    }

    /// Divisional freeness (with certificate): true iff dim <= 2, A empty, or
    /// some restriction A^H has chi(A^H) | chi(A) and is itself divisionally
    /// free.
    DivisionResult is_divisionally_free(const Arrangement& a, const Deadline& deadline = {}) {
        const std::string& key = a.canonical_key();
        {
            std::lock_guard lock(mutex_);
            auto it = df_.find(key);
            if (it != df_.end()) return it->second;
        }
        detail::check_deadline(deadline);
        DivisionResult result;
        if (a.is_empty() || a.dim() <= 2) {
            result.free = true;
            result.certificate = DivisionCertificate{{}, a};
        } else {
            const CharPoly chi_a = chi(a);
            for (std::size_t h = 0; h < a.size() && !result.free; ++h) {
                detail::check_deadline(deadline);
                Arrangement restricted = restrict_to(a, flat_of_hyperplane(a, h));
                const CharPoly chi_r = chi(restricted);
                if (!poly_divides(chi_r, chi_a)) continue;
                DivisionResult sub = is_divisionally_free(restricted, deadline);
                if (!sub.free) continue;
                DivisionCertificate cert;
                cert.steps.push_back(DivisionStep{a, h, chi_a, chi_r});
                cert.steps.insert(cert.steps.end(), sub.certificate->steps.begin(),
                                  sub.certificate->steps.end());
                cert.terminal = sub.certificate->terminal;
                result.free = true;
                result.certificate = std::move(cert);
            }
        }
        std::lock_guard lock(mutex_);
        return df_.emplace(key, std::move(result)).first->second;
    }

    /// Inductive freeness (with certificate tree). Non-splitting chi prunes
    /// immediately; ambient dimension <= 2 short-circuits through the first
    /// hyperplane, which always satisfies the containment condition there.
    InductionResult is_inductively_free(const Arrangement& a, const Deadline& deadline = {}) {
        const std::string& key = a.canonical_key();
        {
            std::lock_guard lock(mutex_);
            auto it = if_.find(key);
            if (it != if_.end()) return it->second;
        }
        detail::check_deadline(deadline);
        InductionResult result;
        const auto roots = exponents(a);
        if (!roots) {
            // chi does not split into nonnegative integer linear factors, so A
            // is not free, let alone inductively free.
        } else if (a.is_empty()) {
            result.free = true;
            result.certificate = std::make_shared<InductionNode>(InductionNode{a, std::nullopt});
        } else if (a.dim() <= 2) {
            result = try_hyperplane(a, 0, deadline);
        } else {
            for (std::size_t h = 0; h < a.size() && !result.free; ++h)
                result = try_hyperplane(a, h, deadline);
        }
        std::lock_guard lock(mutex_);
        return if_.emplace(key, std::move(result)).first->second;
    }

    /// Hereditary variants: check every restriction A^X, X in L(A), and
    /// report all failing flats.
    HereditaryResult is_hereditarily_divisionally_free(const Arrangement& a, const Deadline& deadline = {}) {
        return hereditary(a, deadline, [&](const Arrangement& r, const Deadline& d) {
            return is_divisionally_free(r, d).free;
        });
    }

    HereditaryResult is_hereditarily_inductively_free(const Arrangement& a, const Deadline& deadline = {}) {
        return hereditary(a, deadline, [&](const Arrangement& r, const Deadline& d) {
            return is_inductively_free(r, d).free;
        });
    }

private:
    InductionResult try_hyperplane(const Arrangement& a, std::size_t h, const Deadline& deadline) {
        detail::check_deadline(deadline);
        InductionResult fail;
        Arrangement restricted = restrict_to(a, flat_of_hyperplane(a, h));
        const auto exp_restricted = exponents(restricted);
        if (!exp_restricted) return fail;
        Arrangement deleted = deletion(a, h);
        {
            // chi(A') = chi(A) + chi(A'') by deletion-restriction
            CharPoly chi_deleted = chi(a) + chi(restricted);
            std::lock_guard lock(mutex_);
            chi_.emplace(deleted.canonical_key(), std::move(chi_deleted));
        }
        const auto exp_deleted = exponents(deleted);
        if (!exp_deleted) return fail;
        if (!multiset_contains(*exp_restricted, *exp_deleted)) return fail;
        InductionResult sub_restricted = is_inductively_free(restricted, deadline);
        if (!sub_restricted.free) return fail;
        InductionResult sub_deleted = is_inductively_free(deleted, deadline);
        if (!sub_deleted.free) return fail;
        InductionNode::Step step{h, *exp_deleted, *exp_restricted, sub_deleted.certificate,
                                 sub_restricted.certificate};
        InductionResult ok;
        ok.free = true;
        ok.certificate = std::make_shared<InductionNode>(InductionNode{a, std::move(step)});
        return ok;
    }

    template <typename Check>
    HereditaryResult hereditary(const Arrangement& a, const Deadline& deadline, Check check) {
        HereditaryResult result;
        for (Flat& x : all_flats(a)) {
            detail::check_deadline(deadline);
            if (!check(restrict_to(a, x), deadline)) result.failing.push_back(std::move(x));
        }
        result.free = result.failing.empty();
        return result;
    }

    std::mutex mutex_;
    std::unordered_map<std::string, CharPoly> chi_;
    std::unordered_map<std::string, DivisionResult> df_;
    std::unordered_map<std::string, InductionResult> if_;
};

inline DivisionResult is_divisionally_free(const Arrangement& a, const Deadline& deadline = {}) {
    FreenessEngine engine;
    return engine.is_divisionally_free(a, deadline);
}

inline InductionResult is_inductively_free(const Arrangement& a, const Deadline& deadline = {}) {
    FreenessEngine engine;
    return engine.is_inductively_free(a, deadline);
}

inline HereditaryResult is_hereditarily_divisionally_free(const Arrangement& a, const Deadline& deadline = {}) {
    FreenessEngine engine;
    return engine.is_hereditarily_divisionally_free(a, deadline);
}

inline HereditaryResult is_hereditarily_inductively_free(const Arrangement& a, const Deadline& deadline = {}) {
    FreenessEngine engine;
    return engine.is_hereditarily_inductively_free(a, deadline);
}

// ---------------------------------------------------------------------------
// Certificate verification (independent replay)
// ---------------------------------------------------------------------------

struct VerifyResult {
    bool ok = false;
    long step = -1; // failing step/node index, -1 when not applicable
    std::string message;

    explicit operator bool() const { return ok; }

    static VerifyResult pass() { return VerifyResult{true, -1, ""}; }
    static VerifyResult fail(long step, std::string message) {
        return VerifyResult{false, step, std::move(message)};
    }
};

/// Replays a division certificate against A from scratch: every snapshot,
/// characteristic polynomial, restriction and divisibility claim is
/// recomputed. Nothing from the search is trusted.
inline VerifyResult verify_division_certificate(const Arrangement& a, const DivisionCertificate& cert) {
    Arrangement current = a;
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const DivisionStep& step = cert.steps[i];
        const long n = static_cast<long>(i);
        if (!(step.arrangement == current))
            return VerifyResult::fail(n, "snapshot does not match the replayed arrangement");
        if (step.hyperplane >= current.size())
            return VerifyResult::fail(n, "hyperplane index out of range");
        if (!(char_poly(current) == step.chi_before))
            return VerifyResult::fail(n, "recorded chi does not match the recomputed one");
        Arrangement next = restrict_to(current, flat_of_hyperplane(current, step.hyperplane));
        if (!(char_poly(next) == step.chi_after))
            return VerifyResult::fail(n, "recorded restriction chi does not match the recomputed one");
        if (!poly_divides(step.chi_after, step.chi_before))
            return VerifyResult::fail(n, "chi of the restriction does not divide chi of the arrangement");
        current = std::move(next);
    }
    const long end = static_cast<long>(cert.steps.size());
    if (!(cert.terminal == current)) return VerifyResult::fail(end, "terminal arrangement mismatch");
    if (!(current.dim() <= 2 || current.is_empty()))
        return VerifyResult::fail(end, "terminal is neither a 2-arrangement nor empty");
    return VerifyResult::pass();
}

/// Replays an induction certificate: leaves must be empty arrangements, and
/// at every internal node the recorded children must equal the recomputed
/// deletion/restriction, the exponent multisets must be the recomputed chi
/// roots, and exp A'' must be contained in exp A'.
inline VerifyResult verify_induction_certificate(const Arrangement& a, const InductionCertificate& root) {
    if (!root) return VerifyResult::fail(0, "missing certificate");
    if (!(root->arrangement == a))
        return VerifyResult::fail(0, "root snapshot does not match the arrangement");
    std::unordered_map<const InductionNode*, bool> done;
    long counter = 0;
    auto walk = [&](auto&& self, const InductionCertificate& node) -> VerifyResult {
        if (done.count(node.get())) return VerifyResult::pass();
        const long n = counter++;
        if (!node->step) {
            if (!node->arrangement.is_empty())
                return VerifyResult::fail(n, "leaf node is not an empty arrangement");
            done.emplace(node.get(), true);
            return VerifyResult::pass();
        }
        const auto& step = *node->step;
        if (step.hyperplane >= node->arrangement.size())
            return VerifyResult::fail(n, "hyperplane index out of range");
        if (!step.deleted || !step.restricted) return VerifyResult::fail(n, "missing child node");
        Triple t = triple(node->arrangement, step.hyperplane);
        if (!(step.deleted->arrangement == t.deleted))
            return VerifyResult::fail(n, "deleted child does not match the recomputed deletion");
        if (!(step.restricted->arrangement == t.restricted))
            return VerifyResult::fail(n, "restricted child does not match the recomputed restriction");
        const auto exp_deleted = integer_roots_split(char_poly(t.deleted));
        const auto exp_restricted = integer_roots_split(char_poly(t.restricted));
        if (!exp_deleted || step.exp_deleted != *exp_deleted)
            return VerifyResult::fail(n, "recorded exponents of the deletion are wrong");
        if (!exp_restricted || step.exp_restricted != *exp_restricted)
            return VerifyResult::fail(n, "recorded exponents of the restriction are wrong");
        if (!multiset_contains(step.exp_restricted, step.exp_deleted))
            return VerifyResult::fail(n, "exponent containment fails");
        if (VerifyResult r = self(self, step.restricted); !r.ok) return r;
        if (VerifyResult r = self(self, step.deleted); !r.ok) return r;
        done.emplace(node.get(), true);
        return VerifyResult::pass();
    };
    return walk(walk, root);
}

// ---------------------------------------------------------------------------
// Addition-deletion consistency report
// ---------------------------------------------------------------------------

/// Exponent pattern of a triple (A, A', A''): when all three characteristic
/// polynomials split, checks that exp A = B + {b}, exp A' = B + {b - 1} and
/// exp A'' = B for a common multiset B. A consistency check on certified-free
/// triples, not a freeness decision.
struct AdditionTripleReport {
    std::optional<ExponentMultiset> exp_full;
    std::optional<ExponentMultiset> exp_deleted;
    std::optional<ExponentMultiset> exp_restricted;
    bool pattern_holds = false;
};

inline AdditionTripleReport verify_addition_triple(const Arrangement& a, std::size_t h) {
    Triple t = triple(a, h);
    AdditionTripleReport report;
    report.exp_full = exponents_if_chi_splits(a);
    report.exp_deleted = exponents_if_chi_splits(t.deleted);
    report.exp_restricted = exponents_if_chi_splits(t.restricted);
    if (!report.exp_full || !report.exp_deleted || !report.exp_restricted) return report;
    if (!multiset_contains(*report.exp_restricted, *report.exp_full)) return report;
    // multiset difference exp A - exp A'' must be a single element {b}
    ExponentMultiset rest = *report.exp_restricted;
    ExponentMultiset leftover;
    std::size_t j = 0;
    for (long x : *report.exp_full) {
        if (j < rest.size() && rest[j] == x)
            ++j;
        else
            leftover.push_back(x);
    }
    if (leftover.size() != 1) return report;
    const long b = leftover[0];
    if (b < 1) return report;
    ExponentMultiset expected = *report.exp_restricted;
    expected.insert(std::lower_bound(expected.begin(), expected.end(), b - 1), b - 1);
    report.pattern_holds = (expected == *report.exp_deleted);
    return report;
}

} // namespace hyperarr
