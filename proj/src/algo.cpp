#include "mpmo/algo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mpmo/random.hpp"

namespace mpmo::algo
{

namespace
{

constexpr double inf = std::numeric_limits<double>::infinity();

class Evaluator
{
public:
    Evaluator(const MPProblem &problem, std::size_t budget) : problem_(problem), budget_(budget) {}

    bool exhausted() const { return used_ >= budget_; }
    std::size_t used() const { return used_; }

    Individual operator()(DecisionVector x)
    {
        Individual ind;
        ind.objs = problem_.evaluate(x);
        if (problem_.constrained()) {
            ind.violation = total_violation(problem_.constraints(x));
        }
        ind.x = std::move(x);
        ++used_;
        return ind;
    }

private:
    const MPProblem &problem_;
    std::size_t budget_;
    std::size_t used_ = 0;
};

DecisionVector random_point(const Bounds &b, Rng &rng)
{
    DecisionVector x(b.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = rng.uniform(b.lower[i], b.upper[i]);
    }
    return x;
}

// Bounded simulated binary crossover.
void sbx(DecisionVector &a, DecisionVector &b, const Bounds &bounds, double eta, double prob, Rng &rng)
{
    if (rng.uniform() > prob) {
        return;
    }
    const double expo = 1.0 / (eta + 1.0);
    auto spread = [&](double beta, double u) {
        const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
        return u <= 1.0 / alpha ? std::pow(u * alpha, expo) : std::pow(1.0 / (2.0 - u * alpha), expo);
    };
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (rng.uniform() > 0.5 || std::abs(a[i] - b[i]) <= 1e-14) {
            continue;
        }
        const double lo = bounds.lower[i], hi = bounds.upper[i];
        const double y1 = std::min(a[i], b[i]);
        const double y2 = std::max(a[i], b[i]);
        const double u = rng.uniform();
        double c1 = 0.5 * ((y1 + y2) - spread(1.0 + 2.0 * (y1 - lo) / (y2 - y1), u) * (y2 - y1));
        double c2 = 0.5 * ((y1 + y2) + spread(1.0 + 2.0 * (hi - y2) / (y2 - y1), u) * (y2 - y1));
        c1 = std::clamp(c1, lo, hi);
        c2 = std::clamp(c2, lo, hi);
        if (rng.uniform() <= 0.5) {
            std::swap(c1, c2);
        }
        a[i] = c1;
        b[i] = c2;
    }
}

// Polynomial mutation (bounded variant).
void mutate(DecisionVector &x, const Bounds &bounds, double eta, double prob, Rng &rng)
{
    const double expo = 1.0 / (eta + 1.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (rng.uniform() > prob) {
            continue;
        }
        const double lo = bounds.lower[i], hi = bounds.upper[i];
        const double delta1 = (x[i] - lo) / (hi - lo);
        const double delta2 = (hi - x[i]) / (hi - lo);
        const double u = rng.uniform();
        double deltaq = 0.0;
        if (u <= 0.5) {
            const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - delta1, eta + 1.0);
            deltaq = std::pow(val, expo) - 1.0;
        } else {
            const double val = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - delta2, eta + 1.0);
            deltaq = 1.0 - std::pow(val, expo);
        }
        x[i] = std::clamp(x[i] + deltaq * (hi - lo), lo, hi);
    }
}

// a is preferred over b.
bool better(const Individual &a, const Individual &b)
{
    if (a.violation != b.violation) {
        return a.violation < b.violation;
    }
    if (a.mp_rank != b.mp_rank) {
        return a.mp_rank < b.mp_rank;
    }
    return a.crowding > b.crowding;
}

const Individual &tournament(const std::vector<Individual> &pop, std::size_t size, Rng &rng)
{
    const Individual *best = &pop[rng.below(pop.size())];
    for (std::size_t k = 1; k < size; ++k) {
        const Individual &challenger = pop[rng.below(pop.size())];
        if (better(challenger, *best)) {
            best = &challenger;
        }
    }
    return *best;
}

// Assigns mp_rank / crowding to every member and keeps the best `keep`.
std::vector<Individual> environmental_selection(std::vector<Individual> merged, std::size_t keep)
{
    std::vector<std::size_t> feasible, infeasible;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        (merged[i].violation == 0.0 ? feasible : infeasible).push_back(i);
    }

    std::vector<std::size_t> order;
    order.reserve(merged.size());
    if (!feasible.empty()) {
        std::vector<PartyObjectives> objs;
        objs.reserve(feasible.size());
        for (auto i : feasible) {
            objs.push_back(merged[i].objs);
        }
        const auto ranks = mpnds_rank(objs);
        const int max_rank = *std::max_element(ranks.begin(), ranks.end());
        for (int r = 0; r <= max_rank; ++r) {
            std::vector<std::size_t> front;
            for (std::size_t k = 0; k < feasible.size(); ++k) {
                if (ranks[k] == r) {
                    front.push_back(k);
                }
            }
            const auto crowd = multiparty_crowding(objs, front);
            std::vector<std::size_t> members(front.size());
            std::iota(members.begin(), members.end(), std::size_t{0});
            std::stable_sort(members.begin(), members.end(),
                             [&](std::size_t a, std::size_t b) { return crowd[a] > crowd[b]; });
            for (auto m : members) {
                auto &ind = merged[feasible[front[m]]];
                ind.mp_rank = r;
                ind.crowding = crowd[m];
                order.push_back(feasible[front[m]]);
            }
        }
    }
    std::stable_sort(infeasible.begin(), infeasible.end(),
                     [&](std::size_t a, std::size_t b) { return merged[a].violation < merged[b].violation; });
    const int infeasible_rank = static_cast<int>(merged.size());
    for (auto i : infeasible) {
        merged[i].mp_rank = infeasible_rank;
        merged[i].crowding = 0.0;
        order.push_back(i);
    }

    std::vector<Individual> next;
    next.reserve(keep);
    for (std::size_t k = 0; k < order.size() && next.size() < keep; ++k) {
        next.push_back(std::move(merged[order[k]]));
    }
    return next;
}

class Tracer
{
public:
    Tracer(const RunHooks &hooks, std::size_t budget) : hooks_(hooks), budget_(budget) {}

    void maybe_record(std::size_t used, const std::vector<Individual> &pop, bool final)
    {
        if (!hooks_.trace_metric || hooks_.trace_points == 0) {
            return;
        }
        const std::size_t step = std::max<std::size_t>(1, budget_ / hooks_.trace_points);
        if (!final && used < next_) {
            return;
        }
        auto archive = feasible_nondominated(pop);
        trace_.push_back({used, hooks_.trace_metric(archive)});
        while (next_ <= used) {
            next_ += step;
        }
    }

    std::vector<TracePoint> take() { return std::move(trace_); }

private:
    const RunHooks &hooks_;
    std::size_t budget_;
    std::size_t next_ = 0;
    std::vector<TracePoint> trace_;
};

} // namespace

void EAConfig::validate() const
{
    if (population_size < 2 || population_size % 2 != 0) {
        throw contract_violation("EAConfig: population_size must be even and >= 2");
    }
    if (fe_budget < population_size) {
        throw contract_violation("EAConfig: fe_budget must be >= population_size");
    }
    if (tournament_size < 1) {
        throw contract_violation("EAConfig: tournament_size must be >= 1");
    }
    if (crossover_prob < 0.0 || crossover_prob > 1.0 || mutation_prob > 1.0) {
        throw contract_violation("EAConfig: probabilities must lie in [0, 1]");
    }
}

std::vector<int> mpnds_rank(const std::vector<PartyObjectives> &pop)
{
    if (pop.empty()) {
        throw contract_violation("mpnds_rank: empty population");
    }
    const auto arities = arities_of(pop.front());
    for (const auto &p : pop) {
        check_structure(p, arities);
    }
    std::vector<ObjectiveVector> rank_vectors(pop.size(), ObjectiveVector(arities.size()));
    for (std::size_t j = 0; j < arities.size(); ++j) {
        std::vector<ObjectiveVector> party(pop.size());
        for (std::size_t i = 0; i < pop.size(); ++i) {
            party[i] = pop[i][j];
        }
        const auto r = nondominated_sort(party);
        for (std::size_t i = 0; i < pop.size(); ++i) {
            rank_vectors[i][j] = r[i];
        }
    }
    return nondominated_sort(rank_vectors);
}

std::vector<double> multiparty_crowding(const std::vector<PartyObjectives> &pop, const std::vector<std::size_t> &front)
{
    const std::size_t n = front.size();
    std::vector<double> total(n, 0.0);
    if (n == 0) {
        return total;
    }
    const std::size_t parties = pop[front[0]].size();
    std::vector<std::size_t> idx(n);
    for (std::size_t j = 0; j < parties; ++j) {
        std::vector<double> party(n, 0.0);
        for (std::size_t m = 0; m < pop[front[0]][j].size(); ++m) {
            std::iota(idx.begin(), idx.end(), std::size_t{0});
            std::stable_sort(idx.begin(), idx.end(),
                             [&](std::size_t a, std::size_t b) { return pop[front[a]][j][m] < pop[front[b]][j][m]; });
            const double lo = pop[front[idx.front()]][j][m];
            const double hi = pop[front[idx.back()]][j][m];
            party[idx.front()] = inf;
            party[idx.back()] = inf;
            if (hi - lo <= 0.0) {
                continue;
            }
            for (std::size_t k = 1; k + 1 < n; ++k) {
                party[idx[k]] += (pop[front[idx[k + 1]]][j][m] - pop[front[idx[k - 1]]][j][m]) / (hi - lo);
            }
        }
        for (std::size_t k = 0; k < n; ++k) {
            total[k] += party[k];
        }
    }
    for (auto &t : total) {
        t /= static_cast<double>(parties);
    }
    return total;
}

std::vector<PartyObjectives> objectives_of(const std::vector<Individual> &pop)
{
    std::vector<PartyObjectives> out;
    out.reserve(pop.size());
    for (const auto &ind : pop) {
        out.push_back(ind.objs);
    }
    return out;
}

std::vector<Individual> feasible_nondominated(const std::vector<Individual> &pop)
{
    std::vector<Individual> feasible;
    for (const auto &ind : pop) {
        if (ind.violation == 0.0) {
            feasible.push_back(ind);
        }
    }
    if (feasible.empty()) {
        return feasible;
    }
    return select(feasible, mp_nondominated_filter(objectives_of(feasible)));
}

RunResult run_baseline(const MPProblem &problem, const EAConfig &cfg, const RunHooks &hooks)
{
    cfg.validate();
    problem.bounds.validate();
    Rng rng(cfg.seed);
    Evaluator evaluate(problem, cfg.fe_budget);
    Tracer tracer(hooks, cfg.fe_budget);
    const std::size_t n_pop = cfg.population_size;
    const double pm = cfg.mutation_prob > 0.0 ? cfg.mutation_prob : 1.0 / static_cast<double>(problem.dim);

    std::vector<Individual> pop;
    pop.reserve(n_pop);
    for (std::size_t i = 0; i < n_pop; ++i) {
        pop.push_back(evaluate(random_point(problem.bounds, rng)));
    }
    pop = environmental_selection(std::move(pop), n_pop);
    RunResult result;
    tracer.maybe_record(evaluate.used(), pop, false);

    while (!evaluate.exhausted()) {
        std::vector<Individual> offspring;
        offspring.reserve(n_pop);
        while (offspring.size() < n_pop && !evaluate.exhausted()) {
            DecisionVector a = tournament(pop, cfg.tournament_size, rng).x;
            DecisionVector b = tournament(pop, cfg.tournament_size, rng).x;
            sbx(a, b, problem.bounds, cfg.crossover_eta, cfg.crossover_prob, rng);
            mutate(a, problem.bounds, cfg.mutation_eta, pm, rng);
            mutate(b, problem.bounds, cfg.mutation_eta, pm, rng);
            for (auto *child : {&a, &b}) {
                if (offspring.size() < n_pop && !evaluate.exhausted()) {
                    offspring.push_back(evaluate(std::move(*child)));
                }
            }
        }
        std::vector<Individual> merged = std::move(pop);
        merged.insert(merged.end(), std::make_move_iterator(offspring.begin()),
                      std::make_move_iterator(offspring.end()));
        pop = environmental_selection(std::move(merged), n_pop);
        ++result.generations;
        if (hooks.on_generation) {
            hooks.on_generation(result.generations, pop);
        }
        tracer.maybe_record(evaluate.used(), pop, evaluate.exhausted());
    }

    result.archive = feasible_nondominated(pop);
    result.evaluations = evaluate.used();
    result.trace = tracer.take();
    return result;
}

RunResult run_random_search(const MPProblem &problem, std::uint64_t seed, std::size_t fe_budget, const RunHooks &hooks)
{
    if (fe_budget < 1) {
        throw contract_violation("run_random_search: fe_budget must be >= 1");
    }
    problem.bounds.validate();
    Rng rng(seed);
    Evaluator evaluate(problem, fe_budget);
    Tracer tracer(hooks, fe_budget);
    std::vector<Individual> seen;
    seen.reserve(fe_budget);
    while (!evaluate.exhausted()) {
        Individual ind = evaluate(random_point(problem.bounds, rng));
        // Infeasible samples can never enter the archive.
        if (ind.violation == 0.0) {
            seen.push_back(std::move(ind));
        }
        tracer.maybe_record(evaluate.used(), seen, evaluate.exhausted());
    }
    RunResult result;
    result.archive = feasible_nondominated(seen);
    result.evaluations = evaluate.used();
    result.trace = tracer.take();
    return result;
}

} // namespace mpmo::algo
