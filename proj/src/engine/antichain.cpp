#include "mbt/antichain.hpp"

#include <algorithm>

namespace mbt {

bool Antichain::insert(GroupSet s) {
    for (GroupSet m : sets_)
        if (is_subset(m, s)) return false;
    std::erase_if(sets_, [s](GroupSet m) { return is_subset(s, m); });
    sets_.insert(std::lower_bound(sets_.begin(), sets_.end(), s), s);
    return true;
}

void Antichain::merge(const Antichain& other) {
    for (GroupSet s : other.sets_) insert(s);
}

bool Antichain::valid() const noexcept {
    if (!std::is_sorted(sets_.begin(), sets_.end())) return false;
    for (std::size_t i = 0; i < sets_.size(); ++i)
        for (std::size_t j = 0; j < sets_.size(); ++j)
            if (i != j && is_subset(sets_[i], sets_[j])) return false;
    return true;
}

Antichain antichain_insert(Antichain ac, GroupSet s) {
    ac.insert(s);
    return ac;
}

}  // namespace mbt
