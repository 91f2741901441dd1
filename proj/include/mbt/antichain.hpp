#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace mbt {

/// Set of buggy groups, one bit per group of a RuleSet.
using GroupSet = std::uint64_t;

inline bool is_subset(GroupSet a, GroupSet b) noexcept { return (a & ~b) == 0; }
inline int group_count(GroupSet s) noexcept { return std::popcount(s); }

/// Pairwise incomparable group sets, kept sorted ascending so that equal
/// antichains compare equal member by member.
class Antichain {
public:
    Antichain() = default;

    /// Returns false when a member already covers `s`.
    bool insert(GroupSet s);
    void merge(const Antichain& other);

    bool empty() const noexcept { return sets_.empty(); }
    std::size_t size() const noexcept { return sets_.size(); }
    const std::vector<GroupSet>& sets() const noexcept { return sets_; }
    bool contains_empty_set() const noexcept { return !sets_.empty() && sets_.front() == 0; }

    /// No member is a subset of another and members are sorted.
    bool valid() const noexcept;

    friend bool operator==(const Antichain&, const Antichain&) = default;

private:
    std::vector<GroupSet> sets_;
};

Antichain antichain_insert(Antichain ac, GroupSet s);

}  // namespace mbt
