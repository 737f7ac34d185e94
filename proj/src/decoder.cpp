#include "zdf/decoder.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <stdexcept>
#include <utility>

namespace zdf {

namespace {

std::int64_t saturating_add(std::int64_t a, std::int64_t b) {
    return (b >= kUnlimited) ? std::numeric_limits<std::int64_t>::max() : a + b;
}

bool all_fully_known(const std::vector<TernaryWord>& vars) {
    return std::all_of(vars.begin(), vars.end(),
                       [](const TernaryWord& w) { return w.fully_known(); });
}

struct EdgeRef {
    int factor;
    int var;
    int shift;
    std::size_t slot;  // position within the factor's residual list
};

// Executes factor-node processing over the residual edges, tracking the
// distinct edges that have ever recovered a bit (active edges).
class Sweeper {
public:
    Sweeper(const ResidualGraph& r, std::vector<TernaryWord>& vars) : r_(r), vars_(vars) {
        for (int f = 0; f < static_cast<int>(r.factors.size()); ++f) {
            const auto& list = r.factors[static_cast<std::size_t>(f)];
            for (std::size_t slot = 0; slot < list.size(); ++slot) {
                edges_.push_back({f, list[slot].var, list[slot].shift, slot});
            }
        }
        active_.assign(edges_.size(), 0);
    }

    std::size_t edge_count() const { return edges_.size(); }
    std::size_t active_count() const { return active_count_; }
    const EdgeRef& edge(std::size_t eid) const { return edges_[eid]; }

    // One decoding process; returns whether the target word changed.
    bool process(std::size_t eid) {
        const EdgeRef& e = edges_[eid];
        const auto& list = r_.factors[static_cast<std::size_t>(e.factor)];
        scratch_.clear();
        for (std::size_t slot = 0; slot < list.size(); ++slot) {
            if (slot == e.slot) continue;
            scratch_.emplace_back(list[slot].shift, &vars_[static_cast<std::size_t>(list[slot].var)]);
        }
        TernaryWord updated = factor_update(r_.memories[static_cast<std::size_t>(e.factor)],
                                            e.shift, vars_[static_cast<std::size_t>(e.var)],
                                            scratch_);
        const bool changed = !(updated == vars_[static_cast<std::size_t>(e.var)]);
        vars_[static_cast<std::size_t>(e.var)] = std::move(updated);
        if (changed && !active_[eid]) {
            active_[eid] = 1;
            ++active_count_;
        }
        return changed;
    }

private:
    const ResidualGraph& r_;
    std::vector<TernaryWord>& vars_;
    std::vector<EdgeRef> edges_;
    std::vector<char> active_;
    std::size_t active_count_ = 0;
    std::vector<std::pair<int, const TernaryWord*>> scratch_;
};

}  // namespace

ResidualGraph packet_wise_pa(const FactorGraph& g) {
    ResidualGraph r;
    r.n = g.n;
    r.ell = g.ell;
    r.max_shift = g.max_shift;
    r.factors = g.factors;
    r.memories = g.memories;
    r.vars = g.vars;
    r.resolved_by_peeling.assign(static_cast<std::size_t>(g.n), 0);

    std::vector<std::vector<int>> var_factors(static_cast<std::size_t>(g.n));
    for (int f = 0; f < static_cast<int>(r.factors.size()); ++f) {
        for (const auto& e : r.factors[static_cast<std::size_t>(f)]) {
            var_factors[static_cast<std::size_t>(e.var)].push_back(f);
        }
    }

    std::deque<int> ready;
    for (int f = 0; f < static_cast<int>(r.factors.size()); ++f) {
        if (r.factors[static_cast<std::size_t>(f)].size() == 1) ready.push_back(f);
    }

    while (!ready.empty()) {
        const int f = ready.front();
        ready.pop_front();
        auto& list = r.factors[static_cast<std::size_t>(f)];
        if (list.size() != 1) continue;
        const FactorGraph::Edge e = list[0];
        const TernaryWord& mem = r.memories[static_cast<std::size_t>(f)];

        // The memory must vanish outside the release window, otherwise the
        // constraint cannot be satisfied by any packet value.
        for (std::size_t p = 0; p < mem.length(); ++p) {
            const bool inside = p >= static_cast<std::size_t>(e.shift) &&
                                p < static_cast<std::size_t>(e.shift) + static_cast<std::size_t>(r.ell);
            if (!inside && mem.bit_at(p) != 0) {
                throw std::runtime_error("packet_wise_pa: inconsistent release (nonzero outside window)");
            }
        }
        const TernaryWord packet = window(e.shift, mem, static_cast<std::size_t>(r.ell));
        r.vars[static_cast<std::size_t>(e.var)] = packet;
        r.resolved_by_peeling[static_cast<std::size_t>(e.var)] = 1;

        // Absorb the released packet into every adjacent memory and drop
        // the edges; the releasing factor's own memory becomes zero.
        for (int f2 : var_factors[static_cast<std::size_t>(e.var)]) {
            auto& list2 = r.factors[static_cast<std::size_t>(f2)];
            const auto it = std::find_if(list2.begin(), list2.end(),
                                         [&e](const FactorGraph::Edge& x) { return x.var == e.var; });
            if (it == list2.end()) continue;
            r.memories[static_cast<std::size_t>(f2)] = xor_merge(
                {r.memories[static_cast<std::size_t>(f2)], shift_pad(it->shift, packet, r.max_shift)});
            list2.erase(it);
            if (list2.size() == 1) ready.push_back(f2);
        }
        var_factors[static_cast<std::size_t>(e.var)].clear();
    }

    r.edge_count = 0;
    for (const auto& list : r.factors) r.edge_count += list.size();
    return r;
}

BitwiseResult bitwise_original(const ResidualGraph& r) {
    BitwiseResult res{r.vars, {}};
    DecodeReport& rep = res.report;
    if (r.edge_count == 0) {
        rep.success = all_fully_known(res.vars);
        return res;
    }

    Sweeper sweeper(r, res.vars);
    std::int64_t tau = 0;
    while (true) {
        ++tau;
        std::size_t updating = 0;
        for (std::size_t eid = 0; eid < sweeper.edge_count(); ++eid) {
            if (sweeper.process(eid)) ++updating;
        }
        rep.iterations.push_back({tau, 0, sweeper.edge_count(), updating, sweeper.active_count()});
        rep.total_processes += sweeper.edge_count();
        if (updating == 0) break;
    }
    rep.bitwise_iterations = tau;
    rep.success = all_fully_known(res.vars);
    return res;
}

BitwiseResult bitwise_scheduled(const ResidualGraph& r, std::int64_t t_a, std::int64_t t_b) {
    if (t_a < 1 || t_b < 1) throw std::invalid_argument("bitwise_scheduled: budgets must be >= 1");
    BitwiseResult res{r.vars, {}};
    DecodeReport& rep = res.report;
    if (r.edge_count == 0) {
        rep.success = all_fully_known(res.vars);
        return res;
    }

    Sweeper sweeper(r, res.vars);
    std::vector<char> v_flag(static_cast<std::size_t>(r.n), 0);
    auto reset_v = [&] {
        for (int j = 0; j < r.n; ++j) {
            v_flag[static_cast<std::size_t>(j)] =
                static_cast<char>(res.vars[static_cast<std::size_t>(j)].unresolved_flag());
        }
    };
    auto any_v = [&] {
        return std::any_of(v_flag.begin(), v_flag.end(), [](char c) { return c != 0; });
    };

    std::vector<std::size_t> list_a;  // duplicate-free, insertion order
    std::vector<char> in_list_a(sweeper.edge_count(), 0);
    std::vector<std::size_t> list_b;  // duplicates allowed
    std::int64_t tau = 0;

    while (true) {
        // Stage 1: full sweeps, building L^A.
        std::int64_t tau_deadline = saturating_add(tau, t_a);
        reset_v();
        bool halted = false;
        while (true) {
            ++tau;
            std::size_t updating = 0;
            for (std::size_t eid = 0; eid < sweeper.edge_count(); ++eid) {
                if (sweeper.process(eid)) {
                    ++updating;
                    v_flag[static_cast<std::size_t>(sweeper.edge(eid).var)] = 0;
                    if (!in_list_a[eid]) {
                        in_list_a[eid] = 1;
                        list_a.push_back(eid);
                    }
                }
            }
            rep.iterations.push_back({tau, 1, sweeper.edge_count(), updating, sweeper.active_count()});
            rep.total_processes += sweeper.edge_count();
            if (updating == 0 || (tau >= tau_deadline && any_v())) {
                halted = true;
                break;
            }
            if (!any_v()) break;
        }
        if (halted) break;

        // Stage 2: replay L^A for t_b iterations, recording contributions
        // into L^B in order.
        tau_deadline = saturating_add(tau, t_b);
        reset_v();
        bool back_to_stage1 = false;
        while (true) {
            ++tau;
            std::size_t updating = 0;
            for (std::size_t eid : list_a) {
                if (sweeper.process(eid)) {
                    ++updating;
                    v_flag[static_cast<std::size_t>(sweeper.edge(eid).var)] = 0;
                    list_b.push_back(eid);
                }
            }
            rep.iterations.push_back({tau, 2, list_a.size(), updating, sweeper.active_count()});
            rep.total_processes += list_a.size();
            if (updating == 0 || (tau >= tau_deadline && any_v())) {
                list_b.clear();
                back_to_stage1 = true;
                break;
            }
            if (tau >= tau_deadline) break;
        }
        if (back_to_stage1) {
            ++rep.restarts;
            continue;
        }

        // Stage 3: replay L^B, deleting entries that stop contributing.
        bool done = false;
        while (true) {
            ++tau;
            const std::size_t procs = list_b.size();
            std::size_t updating = 0;
            std::vector<std::size_t> kept;
            kept.reserve(list_b.size());
            for (std::size_t eid : list_b) {
                if (sweeper.process(eid)) {
                    ++updating;
                    kept.push_back(eid);
                }
            }
            list_b.swap(kept);
            rep.iterations.push_back({tau, 3, procs, updating, sweeper.active_count()});
            rep.total_processes += procs;
            if (updating > 0) continue;
            if (!all_fully_known(res.vars)) {
                ++rep.restarts;
                break;  // restart stage 1; L^A and l_B persist
            }
            done = true;
            break;
        }
        if (done) break;
    }

    rep.bitwise_iterations = tau;
    rep.success = all_fully_known(res.vars);
    return res;
}

DecodeOutcome decode(const FactorGraph& g, Algorithm algo, std::int64_t t_a, std::int64_t t_b) {
    ResidualGraph r = packet_wise_pa(g);
    const std::size_t peeled = static_cast<std::size_t>(
        std::count(r.resolved_by_peeling.begin(), r.resolved_by_peeling.end(), 1));

    DecodeOutcome out;
    if (all_fully_known(r.vars)) {
        out.packets = std::move(r.vars);
        out.report.success = true;
        out.report.packet_stage_resolved = peeled;
        return out;
    }

    const auto start = std::chrono::steady_clock::now();
    BitwiseResult bit = (algo == Algorithm::original) ? bitwise_original(r)
                                                      : bitwise_scheduled(r, t_a, t_b);
    const auto stop = std::chrono::steady_clock::now();
    bit.report.decode_seconds = std::chrono::duration<double>(stop - start).count();
    bit.report.packet_stage_resolved = peeled;
    out.packets = std::move(bit.vars);
    out.report = std::move(bit.report);
    return out;
}

}  // namespace zdf
