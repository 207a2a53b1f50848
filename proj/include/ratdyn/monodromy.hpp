#ifndef RATDYN_MONODROMY_HPP
#define RATDYN_MONODROMY_HPP

#include <optional>
#include <string>
#include <vector>

#include "ratdyn/certificate.hpp"
#include "ratdyn/ratmap.hpp"

namespace ratdyn {

// Certified-numeric monodromy action on a generic fiber: one generator per
// finite branch point (lassos sorted by departure angle from the base point)
// plus the big-circle loop when infinity branches; the product of the
// generators in listed order is the identity.
struct PermGroup {
    int degree = 0;
    std::vector<std::vector<int>> generators; // images, 0-based
    ComplexBall base_point{64};
    std::vector<ComplexBall> fiber_labels;
};

struct BlockSystem {
    std::vector<std::vector<int>> blocks; // sorted cells of equal size

    std::size_t block_count() const { return blocks.size(); }
    std::size_t block_size() const { return blocks.empty() ? 0 : blocks[0].size(); }
};

struct Decomposition {
    std::vector<RatMap> factors; // innermost first

    RatMap recompose(const Context& ctx) const;
    std::vector<int> degrees() const;
};

PermGroup monodromy_group(const RatMap& a, mpfr_prec_t precision, const Context& ctx);

bool is_transitive(const PermGroup& g);
// full closure with a bail-out bound (0 = abort over the cap)
unsigned long group_order(const PermGroup& g, unsigned long cap);

// all nontrivial block systems, by minimal-block closure over pairs
std::vector<BlockSystem> block_systems(const PermGroup& g);

// (w, u) with a = u o w and deg w = number of blocks, built by interpolating
// block-symmetric functions along the fiber and verified exactly
std::optional<std::pair<RatMap, RatMap>> right_factor_from_blocks(const RatMap& a,
                                                                  const PermGroup& g,
                                                                  const BlockSystem& bs,
                                                                  mpfr_prec_t precision,
                                                                  const Context& ctx);

// exact linear solve for u with target = u o right; no numerics involved
std::optional<RatMap> left_quotient(const RatMap& target, const RatMap& right,
                                    const Context& ctx);

// all decompositions of a^n into indecomposables up to equivalence, from
// maximal chains of block systems of the iterate's monodromy
std::vector<Decomposition> decompositions_of_iterate(const RatMap& a, int n,
                                                     const Context& ctx);

// linking Mobius chain when the decompositions are equivalent
std::optional<std::vector<Mobius>> equivalent(const Decomposition& d1,
                                              const Decomposition& d2, const Context& ctx);

struct AuditEntry {
    int n = 0;
    long degree = 0;
    int class_count = 0;
    bool all_classes_trivial = false;
    std::vector<std::string> class_factor_strings;
    std::string note;
};

struct AuditReport {
    std::string map_text;
    std::string hypothesis;      // "emp" or "simple+not_lattes"
    bool hypothesis_certified = false;
    std::string verdict;         // PASS / VIOLATION / HYPOTHESIS_NOT_CERTIFIED
    std::vector<AuditEntry> entries;
};

// Theorems t42/l52 at desk scale: certify the hypotheses, enumerate the
// decomposition classes of every iterate up to n_max, and check each class is
// equivalent to (A, ..., A). A violation under certified hypotheses dumps all
// witnesses into the report.
AuditReport audit_iterates(const RatMap& a, int n_max, const Context& ctx);

} // namespace ratdyn

#endif
