#include "mpmo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mpmo/kernels.hpp"
#include "mpmo/random.hpp"

namespace mpmo::metrics
{

double mpigd(const std::vector<PartyObjectives> &reference, const std::vector<PartyObjectives> &obtained)
{
    if (obtained.empty() || reference.empty()) {
        throw contract_violation("mpigd: empty reference or obtained set");
    }
    const auto arities = arities_of(reference.front());
    const kernels::ObjectiveTable ref(reference, arities);
    const kernels::ObjectiveTable got(obtained, arities);
    std::vector<double> nearest(reference.size());
    kernels::active().min_party_distance(ref, got, nearest.data());
    double sum = 0.0;
    for (double d : nearest) {
        sum += d;
    }
    return sum / static_cast<double>(reference.size());
}

double mpigd(const suite::ReferenceFront &reference, const std::vector<PartyObjectives> &obtained)
{
    return mpigd(reference.points, obtained);
}

double hv2d(const std::vector<ObjectiveVector> &points, std::array<double, 2> ref)
{
    std::vector<std::array<double, 2>> inside;
    for (const auto &p : points) {
        if (p.size() != 2) {
            throw contract_violation("hv2d: points must be 2-D");
        }
        if (p[0] < ref[0] && p[1] < ref[1]) {
            inside.push_back({p[0], p[1]});
        }
    }
    std::sort(inside.begin(), inside.end());
    double area = 0.0;
    double prev_y = ref[1];
    for (const auto &p : inside) {
        // Ascending x: a point adds area only if it improves the best y so far.
        if (p[1] < prev_y) {
            area += (ref[0] - p[0]) * (prev_y - p[1]);
            prev_y = p[1];
        }
    }
    return area;
}

MonteCarloEstimate hv_monte_carlo(const std::vector<ObjectiveVector> &points, const std::vector<double> &ref,
                                  std::size_t samples, std::uint64_t seed)
{
    if (samples == 0) {
        throw contract_violation("hv_monte_carlo: samples must be positive");
    }
    const std::size_t dim = ref.size();
    double box = 1.0;
    for (double r : ref) {
        box *= r;
    }
    if (points.empty()) {
        return {};
    }

    const std::size_t point_stride = (points.size() + 3) / 4 * 4;
    std::vector<double> cols(dim * point_stride, std::numeric_limits<double>::infinity());
    for (std::size_t p = 0; p < points.size(); ++p) {
        if (points[p].size() != dim) {
            throw contract_violation("hv_monte_carlo: dimension mismatch");
        }
        for (std::size_t c = 0; c < dim; ++c) {
            cols[c * point_stride + p] = points[p][c];
        }
    }

    Rng rng(seed);
    constexpr std::size_t chunk = 4096;
    std::vector<double> buf(dim * chunk);
    std::uint64_t hits = 0;
    const auto &k = kernels::active();
    for (std::size_t done = 0; done < samples; done += chunk) {
        const std::size_t take = std::min(chunk, samples - done);
        for (std::size_t s = 0; s < take; ++s) {
            for (std::size_t c = 0; c < dim; ++c) {
                buf[c * chunk + s] = rng.uniform() * ref[c];
            }
        }
        hits += k.count_dominated(cols.data(), points.size(), point_stride, dim, buf.data(), take, chunk);
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    return {frac * box, box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples))};
}

NormalizationBounds normalization_bounds(const std::vector<std::vector<PartyObjectives>> &sets)
{
    std::vector<PartyObjectives> all;
    for (const auto &s : sets) {
        all.insert(all.end(), s.begin(), s.end());
    }
    if (all.empty()) {
        throw contract_violation("normalize_sets: all sets are empty");
    }
    const auto arities = arities_of(all.front());
    const auto keep = mp_nondominated_filter(all);

    NormalizationBounds bounds(arities.size());
    for (std::size_t j = 0; j < arities.size(); ++j) {
        bounds[j].ideal.assign(arities[j], std::numeric_limits<double>::infinity());
        bounds[j].nadir.assign(arities[j], -std::numeric_limits<double>::infinity());
    }
    for (auto i : keep) {
        for (std::size_t j = 0; j < arities.size(); ++j) {
            for (std::size_t m = 0; m < arities[j]; ++m) {
                bounds[j].ideal[m] = std::min(bounds[j].ideal[m], all[i][j][m]);
                bounds[j].nadir[m] = std::max(bounds[j].nadir[m], all[i][j][m]);
            }
        }
    }
    return bounds;
}

std::vector<PartyObjectives> apply_normalization(const std::vector<PartyObjectives> &set,
                                                 const NormalizationBounds &bounds)
{
    std::vector<PartyObjectives> out = set;
    for (auto &pt : out) {
        if (pt.size() != bounds.size()) {
            throw contract_violation("apply_normalization: party count mismatch");
        }
        for (std::size_t j = 0; j < pt.size(); ++j) {
            if (pt[j].size() != bounds[j].ideal.size()) {
                throw contract_violation("apply_normalization: arity mismatch");
            }
            for (std::size_t m = 0; m < pt[j].size(); ++m) {
                const double span = bounds[j].nadir[m] - bounds[j].ideal[m];
                pt[j][m] = span > 0.0 ? (pt[j][m] - bounds[j].ideal[m]) / span : 0.0;
            }
        }
    }
    return out;
}

NormalizedSets normalize_sets(const std::vector<std::vector<PartyObjectives>> &sets)
{
    NormalizedSets out;
    out.bounds = normalization_bounds(sets);
    out.sets.reserve(sets.size());
    for (const auto &s : sets) {
        out.sets.push_back(apply_normalization(s, out.bounds));
    }
    return out;
}

MphvResult mphv(const std::vector<PartyObjectives> &normalized, std::size_t parties)
{
    MphvResult r;
    r.per_party.assign(parties, 0.0);
    if (normalized.empty() || parties == 0) {
        return r;
    }
    for (std::size_t j = 0; j < parties; ++j) {
        std::vector<ObjectiveVector> pts;
        pts.reserve(normalized.size());
        for (const auto &pt : normalized) {
            if (pt.size() != parties) {
                throw contract_violation("mphv: party count mismatch");
            }
            pts.push_back(pt[j]);
        }
        const std::size_t m = pts.front().size();
        if (m == 2) {
            r.per_party[j] = hv2d(pts, {hv_reference, hv_reference});
        } else {
            r.per_party[j] = hv_monte_carlo(pts, std::vector<double>(m, hv_reference), hv_mc_samples, hv_mc_seed).value;
        }
    }
    r.sum = std::accumulate(r.per_party.begin(), r.per_party.end(), 0.0);
    r.averaged = r.sum / static_cast<double>(parties);
    return r;
}

} // namespace mpmo::metrics
