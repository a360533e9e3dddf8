#include "mpmo/core.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "mpmo/kernels.hpp"

namespace mpmo
{

bool Bounds::contains(std::span<const double> x) const
{
    if (x.size() != size()) {
        return false;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= lower[i] && x[i] <= upper[i])) {
            return false;
        }
    }
    return true;
}

void Bounds::validate() const
{
    if (lower.size() != upper.size() || lower.empty()) {
        throw contract_violation("bounds: lower/upper size mismatch or empty");
    }
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!(lower[i] < upper[i])) {
            throw contract_violation("bounds: lower[" + std::to_string(i) + "] must be below upper");
        }
    }
}

double total_violation(std::span<const double> violations)
{
    return std::accumulate(violations.begin(), violations.end(), 0.0);
}

std::vector<std::size_t> arities_of(const PartyObjectives &objs)
{
    std::vector<std::size_t> out;
    out.reserve(objs.size());
    for (const auto &p : objs) {
        out.push_back(p.size());
    }
    return out;
}

void check_structure(const PartyObjectives &objs, std::span<const std::size_t> arities)
{
    if (objs.size() != arities.size()) {
        throw contract_violation("party count mismatch: got " + std::to_string(objs.size()) + ", expected "
                                 + std::to_string(arities.size()));
    }
    for (std::size_t j = 0; j < objs.size(); ++j) {
        if (objs[j].size() != arities[j]) {
            throw contract_violation("party " + std::to_string(j) + " arity mismatch");
        }
        for (double v : objs[j]) {
            if (!std::isfinite(v)) {
                throw contract_violation("non-finite objective value");
            }
        }
    }
}

bool pareto_dominates(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size()) {
        throw contract_violation("pareto_dominates: length mismatch");
    }
    bool strict = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] > b[i]) {
            return false;
        }
        if (a[i] < b[i]) {
            strict = true;
        }
    }
    return strict;
}

std::vector<int> nondominated_sort(const std::vector<ObjectiveVector> &objs)
{
    if (objs.empty()) {
        throw contract_violation("nondominated_sort: empty input");
    }
    const std::size_t n = objs.size();
    const std::size_t k = objs.front().size();
    for (const auto &o : objs) {
        if (o.size() != k) {
            throw contract_violation("nondominated_sort: inconsistent arity");
        }
    }

    std::vector<std::vector<std::size_t>> dominated_by_me(n);
    std::vector<std::size_t> domination_count(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (pareto_dominates(objs[i], objs[j])) {
                dominated_by_me[i].push_back(j);
                ++domination_count[j];
            } else if (pareto_dominates(objs[j], objs[i])) {
                dominated_by_me[j].push_back(i);
                ++domination_count[i];
            }
        }
    }

    std::vector<int> rank(n, -1);
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < n; ++i) {
        if (domination_count[i] == 0) {
            front.push_back(i);
        }
    }
    int level = 0;
    while (!front.empty()) {
        std::vector<std::size_t> next;
        for (auto i : front) {
            rank[i] = level;
            for (auto j : dominated_by_me[i]) {
                if (--domination_count[j] == 0) {
                    next.push_back(j);
                }
            }
        }
        front = std::move(next);
        ++level;
    }
    return rank;
}

bool mp_dominates(const PartyObjectives &a, const PartyObjectives &b)
{
    if (a.size() != b.size()) {
        throw contract_violation("mp_dominates: party count mismatch");
    }
    bool strict_party = false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j].size() != b[j].size()) {
            throw contract_violation("mp_dominates: party arity mismatch");
        }
        if (pareto_dominates(b[j], a[j])) {
            return false;
        }
        strict_party = strict_party || pareto_dominates(a[j], b[j]);
    }
    return strict_party;
}

std::vector<std::size_t> mp_nondominated_filter(const std::vector<PartyObjectives> &pop)
{
    if (pop.empty()) {
        throw contract_violation("mp_nondominated_filter: empty population");
    }
    const kernels::ObjectiveTable table(pop);
    std::vector<std::uint8_t> flags(pop.size());
    kernels::active().mp_dominated_flags(table, flags.data());
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        if (flags[i] == 0) {
            keep.push_back(i);
        }
    }
    return keep;
}

} // namespace mpmo
