#include <map>
#include <mutex>

#include "mbt/domain.hpp"
#include "mbt/error.hpp"

namespace mbt {

std::shared_ptr<const DomainContract> find_domain(std::string_view id) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const DomainContract>, std::less<>> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(id); it != cache.end()) return it->second;
    std::shared_ptr<const DomainContract> d;
    if (id == "sumreduce") d = make_sumreduce();
    else if (id == "polyeq") d = make_polyeq();
    else if (id.starts_with("hypostrat:")) d = make_hypostrat(parse_hypostrat_id(id));
    else throw DomainError("unknown domain: " + std::string(id));
    cache.emplace(std::string(id), d);
    return d;
}

SearchConfig default_config(const DomainContract& d) {
    return d.defaults;
}

}  // namespace mbt
