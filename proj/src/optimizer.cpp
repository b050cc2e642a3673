// optimizer.cpp - Feasibility checking and the exhaustive / branch-and-bound
// solvers. See optimizer.hpp.
//
// SPDX-License-Identifier: Apache-2.0
//

#include "slicebound/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

namespace slicebound {

namespace {

constexpr double kTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct BudgetExhausted {};

struct SearchStats {
    std::uint64_t evals = 0;
    std::uint64_t greedy_ok = 0;
    std::uint64_t rebalances = 0;
    std::uint64_t dfs_runs = 0;
    std::uint64_t dfs_nodes = 0;
};
inline SearchStats g_stats;  // diagnostics only


struct SearchBudget {
    std::uint64_t remaining = 0;

    void spend(std::uint64_t n = 1)
    {
        if (remaining < n) {
            throw BudgetExhausted{};
        }
        remaining -= n;
    }
};

int ceil_units(double value, double unit)
{
    return static_cast<int>(std::ceil(value / unit - 1e-9));
}

// ---------------------------------------------------------------------------
// Static per-scenario data
// ---------------------------------------------------------------------------

struct PathData {
    RoutePath path;
    double latency_sum_s = 0.0;
    double propagation_s = 0.0;
    std::vector<double> caps_bps;      // per node
    std::vector<double> pre_latency_s; // sum of latencies of upstream path nodes
};

struct VduData {
    NodeId vdu;
    std::vector<PathData> paths;
    int cap = 0;            // admission ceiling
    double embb_rate = 0.0; // raw background demand
};

struct Context {
    const Scenario* sc = nullptr;
    SplitCatalog catalog;
    double gamma = 0.0;
    double grid = 0.01;
    int units = 100;  // share units per node
    const SliceSpec* urllc = nullptr;
    const SliceSpec* embb = nullptr;
    std::vector<VduData> vdus;
    std::vector<SplitId> splits;

    Context(const Scenario& scenario, double grid_step)
        : sc(&scenario), catalog(scenario.make_catalog()), grid(grid_step)
    {
        gamma = scenario.gamma_value();
        units = static_cast<int>(std::floor(1.0 / grid + 1e-9));
        for (const SliceSpec& s : scenario.slices) {
            if (s.packet_class == PacketClass::URLLC && s.mu_sla_bps > 0.0 && urllc == nullptr) {
                urllc = &s;
            }
            if (s.packet_class == PacketClass::EMBB && embb == nullptr) {
                embb = &s;
            }
        }
        for (SplitId id : scenario.split_set) {
            if (catalog.contains(id) && !catalog.option(id).fronthaul_only) {
                splits.push_back(id);
            }
        }
        for (const NodeId& vdu : scenario.vdus) {
            VduData data;
            data.vdu = vdu;
            for (RoutePath& p :
                 scenario.topology.enumerate_paths(scenario.cu, vdu, scenario.path_hop_limit)) {
                PathData pd;
                pd.propagation_s = propagation_delay_s(p, scenario.speed_of_light_mps);
                for (const NodeId& n : p.nodes) {
                    pd.pre_latency_s.push_back(pd.latency_sum_s);
                    pd.caps_bps.push_back(scenario.topology.node(n).capacity_bps);
                    pd.latency_sum_s += scenario.topology.node(n).latency_s;
                }
                pd.path = std::move(p);
                data.paths.push_back(std::move(pd));
            }
            data.cap = scenario.admission_cap(vdu);
            if (const EmbbDemand* d = scenario.embb_demand_for(vdu)) {
                data.embb_rate = d->rate_bps;
            }
            vdus.push_back(std::move(data));
        }
    }

    int split_rank(SplitId id) const
    {
        // More centralized first, so ties resolve toward the cheaper split.
        return static_cast<int>(kVnfCount - catalog.option(id).cu_vnf_count());
    }
};

// One (slice, vDU) queue inside the share search.
struct QueuePlan {
    SliceKey key;
    const PathData* path = nullptr;
    bool delay_bound = false;  // URLLC: enforce the SLA on the tree bound
    int flows = 1;
    double rho_star = 0.0;    // per-flow inflated rate
    double sigma_star = 0.0;  // per-flow inflated burst
    double tn_rate = 0.0;     // aggregate inflated rate
    double off_path_s = 0.0;  // processing + propagation added to the bound
    double sla_s = 0.0;
    std::vector<int> min_units;
    std::vector<int> units;
};

// Worst-case end-to-end delay of one flow of the queue at the current units.
double queue_total_delay(const Context& ctx, const QueuePlan& q)
{
    const double rho_y = (q.flows - 1) * q.rho_star;
    double bottleneck = kInf;
    double terms = 0.0;
    for (std::size_t v = 0; v < q.units.size(); ++v) {
        const double alloc = q.units[v] * ctx.grid * q.path->caps_bps[v];
        const double residual = alloc - rho_y;
        if (residual <= 0.0) {
            return kInf;
        }
        bottleneck = std::min(bottleneck, residual);
        terms += (q.flows - 1) * (q.sigma_star + q.rho_star * q.path->pre_latency_s[v]) / alloc;
    }
    return q.path->latency_sum_s + q.sigma_star / bottleneck + terms + q.off_path_s;
}

// ---------------------------------------------------------------------------
// Canonical share search: exact on the grid, deterministic
// ---------------------------------------------------------------------------

struct ShareSearch {
    // The DFS fallback is capped: together with the propagation, greedy and
    // rebalance passes this procedure is the canonical share allocator, and
    // the solvers' decision space is exactly what it can certify. Both
    // solvers share it, so they stay equivalent.
    static constexpr std::uint64_t kDfsCap = 2000;

    const Context& ctx;
    std::vector<QueuePlan>& queues;
    SearchBudget& budget;
    std::uint64_t dfs_nodes_left = kDfsCap;
    // node -> (queue index, position in its path)
    std::map<NodeId, std::vector<std::pair<std::size_t, std::size_t>>> users;
    std::map<NodeId, int> used;

    ShareSearch(const Context& c, std::vector<QueuePlan>& q, SearchBudget& b)
        : ctx(c), queues(q), budget(b)
    {
        for (std::size_t i = 0; i < queues.size(); ++i) {
            for (std::size_t v = 0; v < queues[i].path->path.nodes.size(); ++v) {
                users[queues[i].path->path.nodes[v]].push_back({i, v});
            }
        }
    }

    int avail(const NodeId& node) const { return ctx.units - used.at(node); }

    bool run()
    {
        if (!propagate_minima()) {
            return false;
        }
        for (QueuePlan& q : queues) {
            q.units = q.min_units;
        }
        if (greedy()) {
            ++g_stats.greedy_ok;
            dump_residual();
            return true;
        }
        ++g_stats.dfs_runs;
        // Exact fallback over the residual-unit assignments.
        for (QueuePlan& q : queues) {
            for (std::size_t v = 0; v < q.units.size(); ++v) {
                used[q.path->path.nodes[v]] -= q.units[v] - q.min_units[v];
                q.units[v] = q.min_units[v];
            }
        }
        if (dfs_queue(0)) {
            dump_residual();
            return true;
        }
        return false;
    }

    // Tightens per-node minimum units: whatever the other queues do, a queue
    // needs at least the units that keep its bound inside the SLA when every
    // one of its other nodes is granted all spare capacity. Iterates to a
    // fixpoint; proves many infeasible assignments without search.
    bool propagate_minima()
    {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto& [node, list] : users) {
                int total = 0;
                for (auto [qi, pos] : list) {
                    total += queues[qi].min_units[pos];
                }
                used[node] = total;
                if (total > ctx.units) {
                    return false;
                }
            }
            for (QueuePlan& q : queues) {
                if (!q.delay_bound) {
                    continue;
                }
                budget.spend();
                // Optimistic units: own minimum plus everything spare.
                std::vector<int> optimistic(q.min_units.size());
                for (std::size_t v = 0; v < optimistic.size(); ++v) {
                    optimistic[v] = q.min_units[v] + avail(q.path->path.nodes[v]);
                }
                q.units = optimistic;
                if (queue_total_delay(ctx, q) > q.sla_s) {
                    return false;
                }
                for (std::size_t v = 0; v < q.units.size(); ++v) {
                    // Smallest unit count at v that still meets the SLA with
                    // full optimism elsewhere: a valid lower bound.
                    int lo = q.min_units[v];
                    int hi = optimistic[v];
                    while (lo < hi) {
                        const int mid = (lo + hi) / 2;
                        q.units[v] = mid;
                        if (queue_total_delay(ctx, q) <= q.sla_s) {
                            hi = mid;
                        } else {
                            lo = mid + 1;
                        }
                    }
                    q.units[v] = optimistic[v];
                    if (lo > q.min_units[v]) {
                        q.min_units[v] = lo;
                        changed = true;
                    }
                }
            }
        }
        return true;
    }

    bool greedy()
    {
        while (true) {
            budget.spend();
            double worst_gap = 0.0;
            QueuePlan* worst = nullptr;
            for (QueuePlan& q : queues) {
                if (!q.delay_bound) {
                    continue;
                }
                const double gap = queue_total_delay(ctx, q) - q.sla_s;
                if (gap > worst_gap + 0.0) {
                    worst_gap = gap;
                    worst = &q;
                }
            }
            if (worst == nullptr) {
                return true;
            }
            // Spend one unit where it buys the most delay.
            const double before = queue_total_delay(ctx, *worst);
            double best_delta = 0.0;
            std::size_t best_pos = SIZE_MAX;
            for (std::size_t v = 0; v < worst->units.size(); ++v) {
                if (avail(worst->path->path.nodes[v]) <= 0) {
                    continue;
                }
                worst->units[v] += 1;
                const double delta = before - queue_total_delay(ctx, *worst);
                worst->units[v] -= 1;
                if (delta > best_delta) {
                    best_delta = delta;
                    best_pos = v;
                }
            }
            if (best_pos == SIZE_MAX) {
                if (rebalance(*worst)) {
                    ++g_stats.rebalances;
                    continue;
                }
                return false;  // stuck; exact search decides
            }
            worst->units[best_pos] += 1;
            used[worst->path->path.nodes[best_pos]] += 1;
        }
    }

    // The starved queue's nodes are all saturated. A queue that already meets
    // its target (or carries no delay bound) donates one spare unit on a
    // shared node. Donors never fall below their own needs, so a donated unit
    // is never reclaimed and the loop terminates.
    bool rebalance(QueuePlan& starved)
    {
        for (std::size_t v = 0; v < starved.units.size(); ++v) {
            const NodeId& node = starved.path->path.nodes[v];
            for (auto [qi, pos] : users.at(node)) {
                QueuePlan& donor = queues[qi];
                if (&donor == &starved || donor.units[pos] <= donor.min_units[pos]) {
                    continue;
                }
                donor.units[pos] -= 1;
                if (donor.delay_bound && queue_total_delay(ctx, donor) > donor.sla_s) {
                    donor.units[pos] += 1;
                    continue;
                }
                starved.units[v] += 1;
                return true;
            }
        }
        return false;
    }

    bool dfs_queue(std::size_t k)
    {
        while (k < queues.size() && !queues[k].delay_bound) {
            ++k;
        }
        if (k == queues.size()) {
            return true;
        }
        return dfs_node(k, 0);
    }

    bool dfs_node(std::size_t k, std::size_t v)
    {
        ++g_stats.dfs_nodes;
        if (dfs_nodes_left == 0) {
            return false;
        }
        --dfs_nodes_left;
        budget.spend();
        QueuePlan& q = queues[k];
        if (v == q.units.size()) {
            return queue_total_delay(ctx, q) <= q.sla_s && dfs_queue(k + 1);
        }
        // Optimistic: remaining nodes of this queue at full availability.
        std::vector<int> saved(q.units.begin() + v, q.units.end());
        for (std::size_t w = v; w < q.units.size(); ++w) {
            q.units[w] = q.min_units[w] + avail(q.path->path.nodes[w]) -
                         (q.units[w] - q.min_units[w]);
        }
        const double optimistic = queue_total_delay(ctx, q);
        std::copy(saved.begin(), saved.end(), q.units.begin() + v);
        if (optimistic > q.sla_s) {
            return false;
        }
        const NodeId& node = q.path->path.nodes[v];
        const int max_extra = avail(node);
        for (int extra = 0; extra <= max_extra; ++extra) {
            q.units[v] = q.min_units[v] + extra;
            used[node] += extra;
            if (dfs_node(k, v + 1)) {
                return true;
            }
            used[node] -= extra;
        }
        q.units[v] = q.min_units[v];
        return false;
    }

    // Saturate every used node: spare units go to the delay-bounded queues
    // first (round robin in queue order), then to the rest.
    void dump_residual()
    {
        for (auto& [node, list] : users) {
            int leftover = ctx.units - used[node];
            if (leftover <= 0) {
                continue;
            }
            std::vector<std::pair<std::size_t, std::size_t>> ordered = list;
            std::stable_sort(ordered.begin(), ordered.end(),
                             [&](const auto& a, const auto& b) {
                                 return queues[a.first].delay_bound >
                                        queues[b.first].delay_bound;
                             });
            std::size_t i = 0;
            while (leftover > 0 && !ordered.empty()) {
                auto [qi, pos] = ordered[i % ordered.size()];
                queues[qi].units[pos] += 1;
                --leftover;
                ++i;
            }
            used[node] = ctx.units;
        }
    }
};

// ---------------------------------------------------------------------------
// Assignments
// ---------------------------------------------------------------------------

struct UOption {
    SplitId split = SplitId::O1;
    int rank = 0;
    std::size_t pu = 0;  // URLLC path index
    std::size_t pe = 0;  // eMBB path index
    double cost = 0.0;
    int f_ub = 0;  // admission upper bound (cap, split latency, capacity, SLA)
};

struct Assignment {
    std::vector<const UOption*> options;
    std::vector<int> admitted;
};

double assignment_profit(const Context& ctx, const Assignment& a)
{
    double profit = 0.0;
    for (std::size_t u = 0; u < a.options.size(); ++u) {
        profit += ctx.gamma * ctx.sc->econ.c_du * a.admitted[u] - a.options[u]->cost;
    }
    return profit;
}

std::vector<int> assignment_encoding(const Context& ctx, const Assignment& a)
{
    std::vector<int> code;
    for (std::size_t u = 0; u < a.options.size(); ++u) {
        code.push_back(a.options[u]->rank);
        code.push_back(ctx.vdus[u].cap - a.admitted[u]);
        code.push_back(static_cast<int>(a.options[u]->pu));
        code.push_back(static_cast<int>(a.options[u]->pe));
    }
    return code;
}

struct Incumbent {
    bool valid = false;
    double profit = -kInf;
    double cost = 0.0;
    std::vector<int> encoding;
    Assignment assignment;
    std::vector<QueuePlan> queues;
};

// true when (profit, cost, encoding) of the candidate beats the incumbent
bool beats(const Incumbent& have, double profit, double cost, const std::vector<int>& code)
{
    if (!have.valid) {
        return true;
    }
    if (profit != have.profit) {
        return profit > have.profit;
    }
    if (cost != have.cost) {
        return cost < have.cost;
    }
    return code < have.encoding;
}

// Builds the queue plans of the first `levels` vDUs of an assignment and runs
// the share search. Returns false when already infeasible; with
// levels == vdus.size() this is the full feasibility evaluation. Partial
// evaluations are sound pruning: adding vDUs only tightens the search.
bool evaluate_assignment(const Context& ctx, const Assignment& a, std::size_t levels,
                         SearchBudget& budget, std::vector<QueuePlan>& out_queues)
{
    // Feed-forward check over the union of chosen paths.
    std::vector<RoutePath> routes;
    std::vector<QueuePlan> queues;
    for (std::size_t u = 0; u < levels; ++u) {
        const VduData& vdu = ctx.vdus[u];
        const UOption& opt = *a.options[u];
        const SplitOption& split = ctx.catalog.option(opt.split);
        const int admitted = a.admitted[u];

        if (admitted > 0) {
            const PathData& pd = vdu.paths[opt.pu];
            routes.push_back(pd.path);
            QueuePlan q;
            q.key = {ctx.urllc->name, vdu.vdu};
            q.path = &pd;
            q.delay_bound = ctx.urllc->d_sla_s > 0.0;
            q.flows = admitted;
            const double mult = split.overhead_multiplier_128;
            q.rho_star = ctx.urllc->mu_sla_bps * mult;
            q.sigma_star = ctx.urllc->packet_bytes * 8.0 * mult;
            q.tn_rate = admitted * q.rho_star;
            const ProcessingDelay proc = processing_delay(
                admitted * ctx.urllc->mu_sla_bps, split.placement, ctx.sc->processing.k_vdu,
                ctx.sc->processing.k_cu, ctx.sc->processing.z_ref_s, ctx.sc->processing.x_ref_bps,
                ctx.sc->profiles);
            q.off_path_s = proc.total_s() + pd.propagation_s;
            q.sla_s = ctx.urllc->d_sla_s;
            queues.push_back(std::move(q));
        }
        if (vdu.embb_rate > 0.0 && ctx.embb != nullptr) {
            const PathData& pd = vdu.paths[opt.pe];
            routes.push_back(pd.path);
            QueuePlan q;
            q.key = {ctx.embb->name, vdu.vdu};
            q.path = &pd;
            q.delay_bound = false;
            q.flows = 1;
            const double mult = split.overhead_multiplier_1500;
            q.rho_star = vdu.embb_rate * mult;
            q.sigma_star = ctx.embb->packet_bytes * 8.0 * mult;
            q.tn_rate = q.rho_star;
            queues.push_back(std::move(q));
        }
    }
    try {
        validate_feedforward(ctx.sc->topology, routes);
    } catch (const TopologyError&) {
        return false;
    }

    // Capacity minima per node, then the split capacity requirement on the
    // union of each vDU's paths.
    for (QueuePlan& q : queues) {
        q.min_units.resize(q.path->path.nodes.size());
        for (std::size_t v = 0; v < q.min_units.size(); ++v) {
            const double unit_rate = ctx.grid * q.path->caps_bps[v];
            q.min_units[v] = std::max(1, ceil_units(q.tn_rate, unit_rate));
            if (q.min_units[v] > ctx.units) {
                return false;
            }
        }
    }
    for (std::size_t u = 0; u < levels; ++u) {
        const double req = ctx.catalog.required_capacity_bps(a.options[u]->split);
        // Collect this vDU's queues per node.
        std::map<NodeId, std::vector<std::pair<QueuePlan*, std::size_t>>> at_node;
        for (QueuePlan& q : queues) {
            if (q.key.vdu != ctx.vdus[u].vdu) {
                continue;
            }
            for (std::size_t v = 0; v < q.path->path.nodes.size(); ++v) {
                at_node[q.path->path.nodes[v]].push_back({&q, v});
            }
        }
        for (auto& [node, list] : at_node) {
            const double cap = ctx.sc->topology.node(node).capacity_bps;
            const int req_units = ceil_units(req, ctx.grid * cap);
            int have = 0;
            for (auto [q, v] : list) {
                have += q->min_units[v];
            }
            if (have >= req_units) {
                continue;
            }
            // Raise the delay-sensitive queue when it crosses this node.
            QueuePlan* target = list.front().first;
            std::size_t pos = list.front().second;
            for (auto [q, v] : list) {
                if (q->delay_bound) {
                    target = q;
                    pos = v;
                    break;
                }
            }
            target->min_units[pos] += req_units - have;
            if (target->min_units[pos] > ctx.units) {
                return false;
            }
        }
    }

    ++g_stats.evals;
    ShareSearch search(ctx, queues, budget);
    if (!search.run()) {
        return false;
    }
    out_queues = std::move(queues);
    return true;
}

void maybe_update_incumbent(const Context& ctx, const Assignment& a,
                            std::vector<QueuePlan>&& queues, Incumbent& incumbent)
{
    const double profit = assignment_profit(ctx, a);
    double cost = 0.0;
    for (const UOption* opt : a.options) {
        cost += opt->cost;
    }
    std::vector<int> code = assignment_encoding(ctx, a);
    if (beats(incumbent, profit, cost, code)) {
        incumbent.valid = true;
        incumbent.profit = profit;
        incumbent.cost = cost;
        incumbent.encoding = std::move(code);
        incumbent.assignment = a;
        incumbent.queues = std::move(queues);
    }
}

// Per-vDU candidate options with their optimistic admission bounds.
std::vector<std::vector<UOption>> enumerate_options(const Context& ctx, SearchBudget& budget)
{
    std::vector<std::vector<UOption>> all;
    for (std::size_t u = 0; u < ctx.vdus.size(); ++u) {
        const VduData& vdu = ctx.vdus[u];
        std::vector<UOption> options;
        for (SplitId split : ctx.splits) {
            const SplitOption& opt = ctx.catalog.option(split);
            const double cost = placement_cost(opt.placement, ctx.sc->econ);
            const std::size_t embb_paths = vdu.embb_rate > 0.0 ? vdu.paths.size() : 1;
            const std::size_t urllc_paths =
                (ctx.urllc != nullptr && vdu.cap > 0) ? vdu.paths.size() : 1;
            for (std::size_t pu = 0; pu < urllc_paths; ++pu) {
                for (std::size_t pe = 0; pe < embb_paths; ++pe) {
                    UOption o;
                    o.split = split;
                    o.rank = ctx.split_rank(split);
                    o.pu = pu;
                    o.pe = pe;
                    o.cost = cost;
                    o.f_ub = 0;
                    if (ctx.urllc != nullptr && vdu.cap > 0) {
                        const PathData& pd = vdu.paths[pu];
                        const bool split_latency_ok =
                            pd.latency_sum_s + pd.propagation_s <= opt.delay_requirement_s + kTol;
                        if (split_latency_ok) {
                            o.f_ub = vdu.cap;
                            const double mult = opt.overhead_multiplier_128;
                            const double rho = ctx.urllc->mu_sla_bps * mult;
                            // Whole-node capacity ceiling.
                            for (double cap_bps : pd.caps_bps) {
                                o.f_ub = std::min(
                                    o.f_ub, static_cast<int>(std::floor(cap_bps / rho + kTol)));
                            }
                            // SLA ceiling with every node fully granted.
                            if (ctx.urllc->d_sla_s > 0.0) {
                                QueuePlan probe;
                                probe.key = {ctx.urllc->name, vdu.vdu};
                                probe.path = &pd;
                                probe.delay_bound = true;
                                probe.rho_star = rho;
                                probe.sigma_star = ctx.urllc->packet_bytes * 8.0 * mult;
                                probe.sla_s = ctx.urllc->d_sla_s;
                                probe.units.assign(pd.caps_bps.size(), ctx.units);
                                int lo = 0;
                                int hi = o.f_ub;
                                while (lo < hi) {
                                    budget.spend();
                                    const int mid = (lo + hi + 1) / 2;
                                    probe.flows = mid;
                                    probe.tn_rate = mid * rho;
                                    const ProcessingDelay proc = processing_delay(
                                        mid * ctx.urllc->mu_sla_bps, opt.placement,
                                        ctx.sc->processing.k_vdu, ctx.sc->processing.k_cu,
                                        ctx.sc->processing.z_ref_s, ctx.sc->processing.x_ref_bps,
                                        ctx.sc->profiles);
                                    probe.off_path_s = proc.total_s() + pd.propagation_s;
                                    if (queue_total_delay(ctx, probe) <= probe.sla_s) {
                                        lo = mid;
                                    } else {
                                        hi = mid - 1;
                                    }
                                }
                                o.f_ub = lo;
                            }
                        }
                    }
                    options.push_back(o);
                }
            }
        }
        all.push_back(std::move(options));
    }
    return all;
}

Decision build_decision(const Context& ctx, const Incumbent& incumbent)
{
    Decision d;
    for (std::size_t u = 0; u < ctx.vdus.size(); ++u) {
        d.split_per_vdu[ctx.vdus[u].vdu] = incumbent.assignment.options[u]->split;
        d.admitted_urllc[ctx.vdus[u].vdu] = incumbent.assignment.admitted[u];
    }
    for (const QueuePlan& q : incumbent.queues) {
        d.paths[q.key] = q.path->path;
        for (std::size_t v = 0; v < q.units.size(); ++v) {
            d.shares.set_share(q.path->path.nodes[v], q.key, q.units[v] * ctx.grid);
        }
    }
    return d;
}

SolveResult finish(const Context& ctx, const Incumbent& incumbent, SolveStatus status,
                   std::uint64_t leaves)
{
    SolveResult result;
    result.leaves_evaluated = leaves;
    if (!incumbent.valid) {
        // No feasible point seen: proven infeasible only on a finished search.
        result.status = status == SolveStatus::BudgetExceeded ? SolveStatus::BudgetExceeded
                                                              : SolveStatus::Infeasible;
        return result;
    }
    result.has_solution = true;
    result.status = status;
    result.solution.decision = build_decision(ctx, incumbent);
    result.solution.profit = incumbent.profit;
    result.solution.gamma = ctx.gamma;
    result.solution.deployment_cost = incumbent.cost;
    for (int f : incumbent.assignment.admitted) {
        result.solution.total_admitted += f;
    }
    result.solution.certificate = check_feasibility(*ctx.sc, result.solution.decision);
    return result;
}

}  // namespace

// ---------------------------------------------------------------------------
// check_feasibility
// ---------------------------------------------------------------------------

std::vector<ConstraintRecord> FeasibilityReport::violations() const
{
    std::vector<ConstraintRecord> bad;
    for (const ConstraintRecord& r : records) {
        if (!r.ok) {
            bad.push_back(r);
        }
    }
    return bad;
}

std::string FeasibilityReport::summary() const
{
    std::ostringstream out;
    out << (feasible ? "feasible" : "infeasible") << " (" << records.size() << " checks";
    const auto bad = violations();
    if (!bad.empty()) {
        out << ", " << bad.size() << " violations";
        for (const ConstraintRecord& r : bad) {
            out << "; " << r.constraint << " at " << r.where;
        }
    }
    out << ")";
    return out.str();
}

FeasibilityReport check_feasibility(const Scenario& scenario, const Decision& decision)
{
    FeasibilityReport report;
    auto record = [&](const std::string& constraint, const std::string& where, double slack) {
        ConstraintRecord r{constraint, where, slack, slack >= -kTol};
        report.feasible = report.feasible && r.ok;
        report.records.push_back(std::move(r));
    };

    const SplitCatalog catalog = scenario.make_catalog();
    std::vector<QueueTraffic> queues = build_queues(scenario, decision);

    // Share limit at every node carrying any share.
    std::set<NodeId> share_nodes;
    for (const auto& [node_key, phi] : decision.shares.entries()) {
        share_nodes.insert(node_key.first);
    }
    for (const NodeId& node : share_nodes) {
        record("share-limit", node, 1.0 - decision.shares.node_total(node));
    }

    // Placement chain per vDU.
    for (const auto& [vdu, split] : decision.split_per_vdu) {
        const auto& placement = catalog.placement_vector(split);
        bool ok = true;
        for (std::size_t g = 1; g < kVnfCount; ++g) {
            if (placement[g] == VnfLocation::CU && placement[g - 1] == VnfLocation::DU) {
                ok = false;
            }
        }
        record("placement-chain", vdu, ok ? 0.0 : -1.0);
    }

    // Admission cap per vDU.
    for (const auto& [vdu, admitted] : decision.admitted_urllc) {
        record("admission-cap", vdu, static_cast<double>(scenario.admission_cap(vdu) - admitted));
    }

    // Queue capacity at every node of its path.
    for (const QueueTraffic& q : queues) {
        double total = 0.0;
        for (const FlowSpec& f : q.tn_flows) {
            total += f.rate_bps;
        }
        for (const NodeId& node : q.path.nodes) {
            const double alloc = decision.shares.allocated_rate_bps(scenario.topology, node, q.key);
            record("queue-capacity", q.key.str() + "@" + node, alloc - total);
        }
    }

    // Split capacity requirement on the union of each vDU's paths.
    for (const auto& [vdu, split] : decision.split_per_vdu) {
        const double req = catalog.required_capacity_bps(split);
        std::set<NodeId> union_nodes;
        for (const QueueTraffic& q : queues) {
            if (q.key.vdu == vdu) {
                union_nodes.insert(q.path.nodes.begin(), q.path.nodes.end());
            }
        }
        for (const NodeId& node : union_nodes) {
            double total = 0.0;
            for (const QueueTraffic& q : queues) {
                if (q.key.vdu == vdu) {
                    total += decision.shares.allocated_rate_bps(scenario.topology, node, q.key);
                }
            }
            record("split-capacity", to_string(split) + "@" + node, total - req);
        }
    }

    // Per-UE throughput SLA.
    for (const QueueTraffic& q : queues) {
        const SliceSpec* slice = scenario.find_slice(q.key.slice);
        if (slice == nullptr || slice->mu_sla_bps <= 0.0 || q.tn_flows.empty()) {
            continue;
        }
        double min_rate = kInf;
        for (const FlowSpec& f : q.tn_flows) {
            min_rate = std::min(min_rate, f.rate_bps / q.overhead_multiplier);
        }
        record("ue-throughput", q.key.str(), min_rate - slice->mu_sla_bps);
    }

    // Split one-way latency budget on the URLLC path (load-independent part).
    for (const QueueTraffic& q : queues) {
        const SliceSpec* slice = scenario.find_slice(q.key.slice);
        if (slice == nullptr || slice->packet_class != PacketClass::URLLC ||
            q.tn_flows.empty()) {
            continue;
        }
        auto split_it = decision.split_per_vdu.find(q.key.vdu);
        if (split_it == decision.split_per_vdu.end()) {
            continue;
        }
        double fixed = propagation_delay_s(q.path, scenario.speed_of_light_mps);
        for (const NodeId& node : q.path.nodes) {
            fixed += scenario.topology.node(node).latency_s;
        }
        record("split-latency", to_string(split_it->second) + "@" + q.key.str(),
               catalog.option(split_it->second).delay_requirement_s - fixed);
    }

    // Feed-forward routing.
    {
        std::vector<RoutePath> routes;
        for (const QueueTraffic& q : queues) {
            routes.push_back(q.path);
        }
        bool ok = true;
        try {
            validate_feedforward(scenario.topology, routes);
        } catch (const TopologyError&) {
            ok = false;
        }
        record("feed-forward", "routes", ok ? 0.0 : -1.0);
    }

    // Delay SLAs via the end-to-end bound.
    for (const QueueTraffic& q : queues) {
        if (q.sla_s <= 0.0 || q.tn_flows.empty()) {
            continue;
        }
        try {
            double worst = 0.0;
            if (q.identical_flows) {
                worst = analyze_queue_flow(scenario, decision, q, 0).breakdown.total_s();
            } else {
                for (std::size_t i = 0; i < q.tn_flows.size(); ++i) {
                    worst = std::max(
                        worst, analyze_queue_flow(scenario, decision, q, i).breakdown.total_s());
                }
            }
            record("delay-sla", q.key.str(), q.sla_s - worst);
        } catch (const std::exception&) {
            record("delay-sla", q.key.str(), -kInf);
        }
    }

    return report;
}

// ---------------------------------------------------------------------------
// Solvers
// ---------------------------------------------------------------------------

namespace {

void exhaustive_recurse(const Context& ctx, const std::vector<std::vector<UOption>>& options,
                        Assignment& a, std::size_t u, SearchBudget& budget, Incumbent& incumbent,
                        std::uint64_t& leaves)
{
    if (u == ctx.vdus.size()) {
        ++leaves;
        budget.spend();
        std::vector<QueuePlan> queues;
        if (evaluate_assignment(ctx, a, ctx.vdus.size(), budget, queues)) {
            maybe_update_incumbent(ctx, a, std::move(queues), incumbent);
        }
        return;
    }
    for (const UOption& opt : options[u]) {
        a.options[u] = &opt;
        for (int f = 0; f <= opt.f_ub; ++f) {
            a.admitted[u] = f;
            exhaustive_recurse(ctx, options, a, u + 1, budget, incumbent, leaves);
        }
    }
}

// Feasibility is monotone in the admitted count, so the largest feasible
// admission under a fixed prefix is found by bisection.
int max_feasible_admission(const Context& ctx, Assignment& a, std::size_t u, int f_ub,
                           SearchBudget& budget)
{
    std::vector<QueuePlan> queues;
    a.admitted[u] = 0;
    budget.spend();
    if (!evaluate_assignment(ctx, a, u + 1, budget, queues)) {
        return -1;
    }
    int lo = 0;
    int hi = f_ub;
    while (lo < hi) {
        const int mid = (lo + hi + 1) / 2;
        a.admitted[u] = mid;
        budget.spend();
        if (evaluate_assignment(ctx, a, u + 1, budget, queues)) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

// Deterministic constructive pass: per vDU, the admissible option with the
// best contribution at its largest feasible admission under the running
// prefix. `allowed` filters the candidate options (empty: all).
void greedy_pass(const Context& ctx, const std::vector<std::vector<UOption>>& options,
                 const std::vector<SplitId>& allowed, SearchBudget& budget, Incumbent& incumbent,
                 std::uint64_t& leaves)
{
    Assignment a;
    a.options.resize(ctx.vdus.size());
    a.admitted.resize(ctx.vdus.size());
    for (std::size_t u = 0; u < ctx.vdus.size(); ++u) {
        const UOption* best = nullptr;
        int best_admission = 0;
        double best_contrib = -kInf;
        for (const UOption& opt : options[u]) {
            if (!allowed.empty() &&
                std::find(allowed.begin(), allowed.end(), opt.split) == allowed.end()) {
                continue;
            }
            a.options[u] = &opt;
            const int f = max_feasible_admission(ctx, a, u, opt.f_ub, budget);
            if (f < 0) {
                continue;
            }
            const double contrib = ctx.gamma * ctx.sc->econ.c_du * f - opt.cost;
            if (contrib > best_contrib) {
                best_contrib = contrib;
                best = &opt;
                best_admission = f;
            }
        }
        if (best == nullptr) {
            return;  // no feasible continuation under this filter
        }
        a.options[u] = best;
        a.admitted[u] = best_admission;
    }
    std::vector<QueuePlan> queues;
    if (evaluate_assignment(ctx, a, ctx.vdus.size(), budget, queues)) {
        ++leaves;
        maybe_update_incumbent(ctx, a, std::move(queues), incumbent);
    }
}

// Balanced pass for one split: the largest uniform admission that fits
// jointly, then round-robin single increments until nothing improves. Avoids
// the myopic pass's failure mode where the first vDU starves the rest on a
// contended aggregation node.
void uniform_pass(const Context& ctx, const std::vector<std::vector<UOption>>& options,
                  SplitId split, SearchBudget& budget, Incumbent& incumbent,
                  std::uint64_t& leaves)
{
    Assignment a;
    a.options.resize(ctx.vdus.size());
    a.admitted.resize(ctx.vdus.size());
    int cap = 0;
    for (std::size_t u = 0; u < ctx.vdus.size(); ++u) {
        const UOption* chosen = nullptr;
        for (const UOption& opt : options[u]) {
            if (opt.split != split) {
                continue;
            }
            if (chosen == nullptr || std::pair(opt.pu, opt.pe) < std::pair(chosen->pu, chosen->pe)) {
                chosen = &opt;
            }
        }
        if (chosen == nullptr) {
            return;
        }
        a.options[u] = chosen;
        cap = std::max(cap, chosen->f_ub);
    }
    auto feasible_at = [&](int level) {
        for (std::size_t u = 0; u < ctx.vdus.size(); ++u) {
            a.admitted[u] = std::min(level, a.options[u]->f_ub);
        }
        std::vector<QueuePlan> queues;
        budget.spend();
        return evaluate_assignment(ctx, a, ctx.vdus.size(), budget, queues);
    };
    int lo = 0;
    int hi = cap;
    if (!feasible_at(0)) {
        return;
    }
    while (lo < hi) {
        const int mid = (lo + hi + 1) / 2;
        if (feasible_at(mid)) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    for (std::size_t u = 0; u < ctx.vdus.size(); ++u) {
        a.admitted[u] = std::min(lo, a.options[u]->f_ub);
    }
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t u = 0; u < ctx.vdus.size(); ++u) {
            if (a.admitted[u] >= a.options[u]->f_ub) {
                continue;
            }
            a.admitted[u] += 1;
            std::vector<QueuePlan> queues;
            budget.spend();
            if (evaluate_assignment(ctx, a, ctx.vdus.size(), budget, queues)) {
                improved = true;
            } else {
                a.admitted[u] -= 1;
            }
        }
    }
    std::vector<QueuePlan> queues;
    if (evaluate_assignment(ctx, a, ctx.vdus.size(), budget, queues)) {
        ++leaves;
        maybe_update_incumbent(ctx, a, std::move(queues), incumbent);
    }
}

// Warm starts: a free greedy pass plus balanced and greedy passes pinned to
// each candidate split. The pinned passes catch cost-homogeneous optima that
// the myopic pass walks past when one vDU grabs a share-hungry split early.
void greedy_warm_start(const Context& ctx, const std::vector<std::vector<UOption>>& options,
                       SearchBudget& budget, Incumbent& incumbent, std::uint64_t& leaves)
{
    for (SplitId split : ctx.splits) {
        uniform_pass(ctx, options, split, budget, incumbent, leaves);
    }
    greedy_pass(ctx, options, {}, budget, incumbent, leaves);
    for (SplitId split : ctx.splits) {
        greedy_pass(ctx, options, {split}, budget, incumbent, leaves);
    }
}

void bnb_recurse(const Context& ctx, const std::vector<std::vector<UOption>>& options,
                 const std::vector<double>& suffix_ub, Assignment& a, std::size_t u,
                 double profit_so_far, SearchBudget& budget, Incumbent& incumbent,
                 std::uint64_t& leaves)
{
    const bool last = u + 1 == ctx.vdus.size();
    for (const UOption& opt : options[u]) {
        a.options[u] = &opt;
        // Skip options that cannot beat the incumbent even at their cap.
        const double opt_best =
            profit_so_far + ctx.gamma * ctx.sc->econ.c_du * opt.f_ub - opt.cost + suffix_ub[u + 1];
        if (incumbent.valid && opt_best < incumbent.profit) {
            continue;
        }
        const int f_star = max_feasible_admission(ctx, a, u, opt.f_ub, budget);
        for (int f = f_star; f >= 0; --f) {
            const double here = profit_so_far + ctx.gamma * ctx.sc->econ.c_du * f - opt.cost;
            const double ub = here + suffix_ub[u + 1];
            if (incumbent.valid && ub < incumbent.profit) {
                break;  // admission only shrinks from here on
            }
            a.admitted[u] = f;
            if (last) {
                ++leaves;
                budget.spend();
                std::vector<QueuePlan> queues;
                if (evaluate_assignment(ctx, a, u + 1, budget, queues)) {
                    maybe_update_incumbent(ctx, a, std::move(queues), incumbent);
                    break;  // lower admission at the last level is strictly worse
                }
            } else {
                bnb_recurse(ctx, options, suffix_ub, a, u + 1, here, budget, incumbent, leaves);
            }
        }
    }
}

}  // namespace

SolveResult solve_exhaustive(const Scenario& scenario, const SolveOptions& opts)
{
    const Context ctx(scenario, opts.grid_step);
    SearchBudget budget{opts.budget};
    Incumbent incumbent;
    std::uint64_t leaves = 0;
    SolveStatus status = SolveStatus::Optimal;
    // The incumbent refers into the option lists; keep them alive until the
    // result is materialized.
    std::vector<std::vector<UOption>> options;
    try {
        options = enumerate_options(ctx, budget);
        Assignment a;
        a.options.resize(ctx.vdus.size());
        a.admitted.resize(ctx.vdus.size());
        exhaustive_recurse(ctx, options, a, 0, budget, incumbent, leaves);
    } catch (const BudgetExhausted&) {
        status = SolveStatus::BudgetExceeded;
    }
    return finish(ctx, incumbent, status, leaves);
}

SolveResult solve_bnb(const Scenario& scenario, const SolveOptions& opts)
{
    const Context ctx(scenario, opts.grid_step);
    SearchBudget budget{opts.budget};
    Incumbent incumbent;
    std::uint64_t leaves = 0;
    SolveStatus status = SolveStatus::Optimal;
    std::vector<std::vector<UOption>> options;
    try {
        options = enumerate_options(ctx, budget);
        // Explore promising options first; ties in the encoding order.
        for (auto& list : options) {
            std::stable_sort(list.begin(), list.end(), [&](const UOption& x, const UOption& y) {
                const double cx = ctx.gamma * x.f_ub - x.cost;
                const double cy = ctx.gamma * y.f_ub - y.cost;
                if (cx != cy) {
                    return cx > cy;
                }
                return std::tuple(x.rank, x.pu, x.pe) < std::tuple(y.rank, y.pu, y.pe);
            });
        }
        std::vector<double> suffix_ub(ctx.vdus.size() + 1, 0.0);
        for (std::size_t u = ctx.vdus.size(); u-- > 0;) {
            double best = -kInf;
            for (const UOption& opt : options[u]) {
                best = std::max(best, ctx.gamma * ctx.sc->econ.c_du * opt.f_ub - opt.cost);
            }
            suffix_ub[u] = best + suffix_ub[u + 1];
        }
        Assignment a;
        a.options.resize(ctx.vdus.size());
        a.admitted.resize(ctx.vdus.size());
        if (ctx.vdus.empty()) {
            std::vector<QueuePlan> queues;
            if (evaluate_assignment(ctx, a, 0, budget, queues)) {
                maybe_update_incumbent(ctx, a, std::move(queues), incumbent);
            }
        } else {
            greedy_warm_start(ctx, options, budget, incumbent, leaves);
            bnb_recurse(ctx, options, suffix_ub, a, 0, 0.0, budget, incumbent, leaves);
        }
    } catch (const BudgetExhausted&) {
        status = SolveStatus::BudgetExceeded;
    }
    return finish(ctx, incumbent, status, leaves);
}

ModeComparison compare_modes(const Scenario& scenario, const SolveOptions& options)
{
    ModeComparison cmp;
    cmp.ffs = solve_bnb(scenario, options);

    Scenario o1 = scenario;
    o1.split_set = {SplitId::O1};
    cmp.o1_only = solve_bnb(o1, options);

    Scenario o9 = scenario;
    o9.split_set = {SplitId::O9};
    cmp.o9_only = solve_bnb(o9, options);

    // Any fixed-split solution lives inside the flexible decision space, so
    // when the search is budget-bounded the flexible result is the best of
    // the three certified solutions.
    for (const SolveResult* fixed : {&cmp.o1_only, &cmp.o9_only}) {
        if (!fixed->has_solution) {
            continue;
        }
        if (!cmp.ffs.has_solution || fixed->solution.profit > cmp.ffs.solution.profit) {
            const SolveStatus keep = cmp.ffs.status == SolveStatus::Optimal &&
                                             fixed->status == SolveStatus::Optimal
                                         ? SolveStatus::Optimal
                                         : SolveStatus::BudgetExceeded;
            cmp.ffs.solution = fixed->solution;
            cmp.ffs.has_solution = true;
            cmp.ffs.status = keep;
        }
    }

    if (cmp.ffs.has_solution) {
        for (const auto& [vdu, split] : cmp.ffs.solution.decision.split_per_vdu) {
            cmp.ffs_split_histogram[split] += 1;
        }
    }
    return cmp;
}

std::string solution_to_csv(const Scenario& scenario, const Solution& solution)
{
    std::ostringstream out;
    out.precision(10);
    // Column per (slice, vDU) pair found in the share table.
    std::set<SliceKey> keys;
    std::set<NodeId> nodes;
    for (const auto& [node_key, phi] : solution.decision.shares.entries()) {
        nodes.insert(node_key.first);
        keys.insert(node_key.second);
    }
    out << "node";
    for (const SliceKey& key : keys) {
        out << ",phi_" << key.slice << "_" << key.vdu;
    }
    out << '\n';
    for (const NodeId& node : nodes) {
        out << node;
        for (const SliceKey& key : keys) {
            out << ',' << solution.decision.shares.share(node, key);
        }
        out << '\n';
    }
    out << "vdu,split,admitted\n";
    for (const NodeId& vdu : scenario.vdus) {
        auto split_it = solution.decision.split_per_vdu.find(vdu);
        auto admitted_it = solution.decision.admitted_urllc.find(vdu);
        out << vdu << ',' << (split_it != solution.decision.split_per_vdu.end()
                                  ? to_string(split_it->second)
                                  : "-")
            << ',' << (admitted_it != solution.decision.admitted_urllc.end()
                           ? admitted_it->second
                           : 0)
            << '\n';
    }
    out << "profit," << solution.profit << '\n';
    out << "deployment_cost," << solution.deployment_cost << '\n';
    out << "gamma," << solution.gamma << '\n';
    out << "total_admitted," << solution.total_admitted << '\n';
    return out.str();
}

std::string solution_to_json(const Scenario& scenario, const Solution& solution)
{
    nlohmann::json j;
    j["profit"] = solution.profit;
    j["gamma"] = solution.gamma;
    j["deployment_cost"] = solution.deployment_cost;
    j["total_admitted"] = solution.total_admitted;
    j["feasible"] = solution.certificate.feasible;
    j["decision"] = nlohmann::json::parse(decision_to_json(solution.decision));
    nlohmann::json checks = nlohmann::json::array();
    for (const ConstraintRecord& r : solution.certificate.records) {
        checks.push_back(
            {{"constraint", r.constraint}, {"where", r.where}, {"slack", r.slack}, {"ok", r.ok}});
    }
    j["certificate"] = checks;
    (void)scenario;
    return j.dump(2) + "\n";
}

namespace diag {
Counters snapshot()
{

    return {g_stats.evals, g_stats.greedy_ok, g_stats.rebalances, g_stats.dfs_runs,
            g_stats.dfs_nodes};
}
}  // namespace diag

}  // namespace slicebound
