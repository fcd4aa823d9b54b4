#include "cbp/aptas.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <queue>

namespace cbp::aptas {

std::pair<std::vector<Item>, std::vector<Item>> split_small_large(const Instance& instance,
                                                                  const Rational& eps) {
    if (eps <= Rational(0) || eps >= Rational(1))
        throw PreconditionError("aptas: eps must lie in (0,1), got " + eps.str());
    const Rational threshold = eps * eps;
    std::vector<Item> large, small;
    for (const auto& item : instance.items)
        (item.size >= threshold ? large : small).push_back(item);
    return {std::move(large), std::move(small)};
}

Grouping group_round_down(std::span<const Item> large_items, const Rational& eps,
                          int colour_count) {
    Grouping grouping;
    for (int colour = 1; colour <= colour_count; ++colour) {
        std::vector<Item> items;
        for (const auto& item : large_items)
            if (item.colour == colour) items.push_back(item);
        if (items.empty()) continue;
        std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
            if (a.size != b.size) return a.size > b.size;
            return a.id < b.id;
        });
        const std::int64_t n_c = static_cast<std::int64_t>(items.size());
        const std::int64_t group_size =
            std::max<std::int64_t>(1, (Rational(n_c) * eps * eps * eps).ceil());
        ColourGrouping cg;
        cg.colour = colour;
        for (std::int64_t start = 0; start < n_c; start += group_size) {
            offline::RoundedGroup group;
            group.direction = offline::RoundedGroup::Direction::down;
            std::int64_t end = std::min(n_c, start + group_size);
            group.items.assign(items.begin() + start, items.begin() + end);
            group.rounded_size = group.items.back().size; // smallest: sorted decreasing
            cg.groups.push_back(std::move(group));
        }
        grouping.q_items.insert(grouping.q_items.end(), cg.groups.front().items.begin(),
                                cg.groups.front().items.end());
        grouping.per_colour.push_back(std::move(cg));
    }
    return grouping;
}

std::vector<SizeClass> build_classes(const Grouping& grouping) {
    std::vector<SizeClass> classes;
    for (const auto& cg : grouping.per_colour) {
        // merge equal rounded sizes within a colour; receivers of merged
        // groups are all <= the shared rounded size
        std::map<Rational, std::size_t, std::greater<Rational>> index;
        for (std::size_t g = 0; g < cg.groups.size(); ++g) {
            const auto& group = cg.groups[g];
            auto [it, inserted] = index.try_emplace(group.rounded_size, classes.size());
            if (inserted) {
                SizeClass cls;
                cls.colour = cg.colour;
                cls.rounded_size = group.rounded_size;
                classes.push_back(std::move(cls));
            }
            SizeClass& cls = classes[it->second];
            cls.demand += static_cast<int>(group.items.size());
            if (g + 1 < cg.groups.size()) {
                const auto& next = cg.groups[g + 1].items;
                cls.receivers.insert(cls.receivers.end(), next.begin(), next.end());
            }
        }
    }
    return classes;
}

bool LabelledConfiguration::empty_content() const {
    return std::all_of(counts.begin(), counts.end(), [](int c) { return c == 0; });
}

namespace {

struct ConfigEnumerator {
    const std::vector<SizeClass>& classes;
    std::uint32_t labellable_mask;
    std::uint64_t ceiling;
    std::vector<LabelledConfiguration> out;
    std::vector<int> counts;

    void emit(const Rational& slack) {
        // iterate the subsets of labellable_mask (including the empty one)
        std::uint32_t label = 0;
        while (true) {
            if (out.size() + 1 > ceiling)
                throw BudgetExceededError("enumerate_configurations: ceiling of " +
                                          std::to_string(ceiling) + " configurations exceeded");
            out.push_back({counts, label, slack});
            if (label == labellable_mask) break;
            label = (label - labellable_mask) & labellable_mask; // next subset
        }
    }

    void walk(std::size_t cls, const Rational& slack) {
        if (cls == classes.size()) {
            emit(slack);
            return;
        }
        counts[cls] = 0;
        walk(cls + 1, slack);
        Rational left = slack;
        for (int take = 1; take <= classes[cls].demand; ++take) {
            if (classes[cls].rounded_size > left) break;
            left -= classes[cls].rounded_size;
            counts[cls] = take;
            walk(cls + 1, left);
        }
        counts[cls] = 0;
    }
};

} // namespace

std::vector<LabelledConfiguration> enumerate_configurations(const std::vector<SizeClass>& classes,
                                                            int colour_count,
                                                            std::uint32_t labellable_mask,
                                                            std::uint64_t ceiling) {
    if (colour_count < 1 || colour_count > 20)
        throw PreconditionError("enumerate_configurations: colour count must be in 1..20");
    if (labellable_mask >= (std::uint32_t{1} << colour_count))
        throw PreconditionError("enumerate_configurations: label mask outside the colour range");
    ConfigEnumerator en{classes, labellable_mask, ceiling, {}, std::vector<int>(classes.size(), 0)};
    en.walk(0, Rational(1));
    return en.out;
}

std::vector<LabelledConfiguration> enumerate_configurations(const std::vector<SizeClass>& classes,
                                                            int colour_count,
                                                            std::uint64_t ceiling) {
    return enumerate_configurations(classes, colour_count,
                                    (std::uint32_t{1} << colour_count) - 1, ceiling);
}

namespace {

struct CoverSearch {
    CoverSearch(const std::vector<LabelledConfiguration>& configs,
                const std::vector<SizeClass>& classes, int max_bins, int max_empty_bins,
                std::uint64_t max_nodes, std::uint64_t max_candidates)
        : configs(configs), classes(classes), max_bins(max_bins), max_empty_bins(max_empty_bins),
          max_nodes(max_nodes), max_candidates(max_candidates) {}

    const std::vector<LabelledConfiguration>& configs;
    const std::vector<SizeClass>& classes;
    std::vector<int> span_limit;            // per colour index c-1
    std::vector<std::uint32_t> contributes; // colours a config touches (large or label)
    std::vector<int> last_config_for_class;
    int max_bins;
    int max_empty_bins;
    std::uint64_t max_nodes;
    std::uint64_t max_candidates;

    std::vector<int> demand;
    std::vector<int> span;
    std::vector<std::pair<int, int>> chosen;
    std::vector<Candidate> out;
    std::uint64_t nodes = 0;
    Rational remaining_weight;
    int empty_bins_used = 0;

    void tick() {
        if (++nodes > max_nodes)
            throw BudgetExceededError("search_packings: node budget exhausted", out.size());
    }

    bool demand_cleared() const {
        return std::all_of(demand.begin(), demand.end(), [](int d) { return d == 0; });
    }

    void record(int bins_used) {
        if (out.size() == max_candidates)
            throw BudgetExceededError("search_packings: candidate budget exhausted", out.size());
        out.push_back({chosen, bins_used});
    }

    void apply_one(std::size_t idx, const Rational& config_weight) {
        const auto& config = configs[idx];
        for (std::size_t cls = 0; cls < demand.size(); ++cls) demand[cls] -= config.counts[cls];
        remaining_weight -= config_weight;
        for (int c = 0; c < static_cast<int>(span.size()); ++c)
            if (contributes[idx] & (std::uint32_t{1} << c)) ++span[c];
        if (config.empty_content()) ++empty_bins_used;
    }

    void undo_one(std::size_t idx, const Rational& config_weight) {
        const auto& config = configs[idx];
        for (std::size_t cls = 0; cls < demand.size(); ++cls) demand[cls] += config.counts[cls];
        remaining_weight += config_weight;
        for (int c = 0; c < static_cast<int>(span.size()); ++c)
            if (contributes[idx] & (std::uint32_t{1} << c)) --span[c];
        if (config.empty_content()) --empty_bins_used;
    }

    bool spans_within_limits(std::size_t idx) const {
        for (int c = 0; c < static_cast<int>(span.size()); ++c)
            if (contributes[idx] & (std::uint32_t{1} << c))
                if (span[static_cast<std::size_t>(c)] > span_limit[static_cast<std::size_t>(c)])
                    return false;
        return true;
    }

    void walk(std::size_t idx, int bins_used) {
        tick();
        if (idx == configs.size()) {
            if (demand_cleared()) record(bins_used);
            return;
        }
        // a class still in demand must be coverable by the remaining configs
        for (std::size_t cls = 0; cls < demand.size(); ++cls)
            if (demand[cls] > 0 && last_config_for_class[cls] < static_cast<int>(idx)) return;

        const auto& config = configs[idx];
        int max_mult;
        if (config.empty_content()) {
            max_mult = std::min(max_bins - bins_used, max_empty_bins - empty_bins_used);
        } else {
            max_mult = max_bins - bins_used;
            for (std::size_t cls = 0; cls < demand.size(); ++cls)
                if (config.counts[cls] > 0)
                    max_mult = std::min(max_mult, demand[cls] / config.counts[cls]);
        }

        Rational config_weight;
        for (std::size_t cls = 0; cls < demand.size(); ++cls)
            if (config.counts[cls] > 0)
                config_weight += classes[cls].rounded_size * Rational(config.counts[cls]);

        int applied = 0;
        for (int mult = 0; mult <= max_mult; ++mult) {
            if (mult > 0) {
                apply_one(idx, config_weight);
                ++applied;
                // one more copy only widens spans; stop here if it went over
                if (!spans_within_limits(idx)) break;
            }
            // copies so far plus the weight bound for what is left
            if (bins_used + mult + remaining_weight.ceil() <= max_bins) {
                if (mult > 0) chosen.emplace_back(static_cast<int>(idx), mult);
                walk(idx + 1, bins_used + mult);
                if (mult > 0) chosen.pop_back();
            }
        }
        for (int i = 0; i < applied; ++i) undo_one(idx, config_weight);
    }
};

} // namespace

std::vector<Candidate> search_packings(const std::vector<LabelledConfiguration>& configs,
                                       const std::vector<SizeClass>& classes, const Rational& beta,
                                       const std::vector<std::int64_t>& per_colour_opt,
                                       int max_bins, int max_empty_bins, const Budgets& budgets) {
    if (beta < Rational(1)) throw PreconditionError("search_packings: beta must be >= 1");
    const int m = static_cast<int>(per_colour_opt.size());

    CoverSearch search(configs, classes, max_bins, max_empty_bins, budgets.max_search_nodes,
                       budgets.max_candidates);
    search.span_limit.resize(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c)
        search.span_limit[static_cast<std::size_t>(c)] =
            static_cast<int>((beta * Rational(per_colour_opt[static_cast<std::size_t>(c)])).floor());

    search.contributes.reserve(configs.size());
    for (const auto& config : configs) {
        std::uint32_t mask = config.colour_label;
        for (std::size_t cls = 0; cls < classes.size(); ++cls)
            if (config.counts[cls] > 0) mask |= std::uint32_t{1} << (classes[cls].colour - 1);
        // the all-empty configuration is a fully empty bin; never place one
        if (config.empty_content() && config.colour_label == 0) mask = 0xffffffffu;
        search.contributes.push_back(mask);
    }
    // forbid the all-empty config via an unsatisfiable span mask when m < 32
    // (it contributes to colours that do not exist, whose limit is 0)
    search.span_limit.resize(32, 0);
    search.span.assign(32, 0);

    search.last_config_for_class.assign(classes.size(), -1);
    for (std::size_t cls = 0; cls < classes.size(); ++cls)
        for (std::size_t i = 0; i < configs.size(); ++i)
            if (configs[i].counts[cls] > 0)
                search.last_config_for_class[cls] = static_cast<int>(i);

    search.demand.resize(classes.size());
    for (std::size_t cls = 0; cls < classes.size(); ++cls) {
        search.demand[cls] = classes[cls].demand;
        search.remaining_weight += classes[cls].rounded_size * Rational(classes[cls].demand);
    }

    search.walk(0, 0);
    return std::move(search.out);
}

LpsSolution solve_lps(const LpsProblem& problem) {
    const int bins = static_cast<int>(problem.bins.size());
    const int colours = static_cast<int>(problem.supplies.size());
    for (const auto& side : problem.bins)
        if (side.used_size < Rational(0) || side.used_size > Rational(1))
            throw PreconditionError("solve_lps: bin load outside [0,1]");
    for (const auto& supply : problem.supplies)
        if (supply < Rational(0)) throw PreconditionError("solve_lps: negative supply");

    // source 0, colours 1..m, bins m+1..m+k, sink m+k+1
    const int source = 0;
    const int sink = colours + bins + 1;
    struct Edge {
        int to;
        Rational cap;
        std::size_t rev;
    };
    std::vector<std::vector<Edge>> graph(static_cast<std::size_t>(sink + 1));
    auto add_edge = [&](int u, int v, const Rational& cap) {
        graph[static_cast<std::size_t>(u)].push_back({v, cap, graph[static_cast<std::size_t>(v)].size()});
        graph[static_cast<std::size_t>(v)].push_back(
            {u, Rational(0), graph[static_cast<std::size_t>(u)].size() - 1});
    };
    for (int c = 0; c < colours; ++c)
        add_edge(source, 1 + c, problem.supplies[static_cast<std::size_t>(c)]);
    for (int b = 0; b < bins; ++b) {
        const auto& side = problem.bins[static_cast<std::size_t>(b)];
        Rational capacity = max(Rational(0), Rational(1) - side.used_size);
        add_edge(colours + 1 + b, sink, capacity);
        for (int c = 0; c < colours; ++c)
            if (side.colour_label & (std::uint32_t{1} << c))
                add_edge(1 + c, colours + 1 + b, problem.supplies[static_cast<std::size_t>(c)]);
    }

    // Edmonds-Karp; the augmentation count is bounded by O(V * E) independent
    // of the (rational) capacities
    Rational total;
    while (true) {
        std::vector<std::pair<int, std::size_t>> parent(graph.size(), {-1, 0});
        parent[source] = {source, 0};
        std::queue<int> frontier;
        frontier.push(source);
        while (!frontier.empty() && parent[static_cast<std::size_t>(sink)].first == -1) {
            int u = frontier.front();
            frontier.pop();
            for (std::size_t e = 0; e < graph[static_cast<std::size_t>(u)].size(); ++e) {
                const Edge& edge = graph[static_cast<std::size_t>(u)][e];
                if (edge.cap.is_zero() || parent[static_cast<std::size_t>(edge.to)].first != -1)
                    continue;
                parent[static_cast<std::size_t>(edge.to)] = {u, e};
                frontier.push(edge.to);
            }
        }
        if (parent[static_cast<std::size_t>(sink)].first == -1) break;
        // bottleneck along the path
        Rational bottleneck;
        bool first = true;
        for (int v = sink; v != source;) {
            auto [u, e] = parent[static_cast<std::size_t>(v)];
            const Edge& edge = graph[static_cast<std::size_t>(u)][e];
            bottleneck = first ? edge.cap : min(bottleneck, edge.cap);
            first = false;
            v = u;
        }
        for (int v = sink; v != source;) {
            auto [u, e] = parent[static_cast<std::size_t>(v)];
            Edge& edge = graph[static_cast<std::size_t>(u)][e];
            edge.cap -= bottleneck;
            graph[static_cast<std::size_t>(edge.to)][edge.rev].cap += bottleneck;
            v = u;
        }
        total += bottleneck;
    }

    LpsSolution solution;
    solution.placed_total = total;
    solution.quota.assign(static_cast<std::size_t>(bins),
                          std::vector<Rational>(static_cast<std::size_t>(colours)));
    for (int c = 0; c < colours; ++c)
        for (const Edge& edge : graph[static_cast<std::size_t>(1 + c)]) {
            if (edge.to < colours + 1 || edge.to > colours + bins) continue;
            // flow on colour->bin = residual cap of its reverse edge
            const Edge& rev = graph[static_cast<std::size_t>(edge.to)][edge.rev];
            if (!rev.cap.is_zero())
                solution.quota[static_cast<std::size_t>(edge.to - colours - 1)]
                              [static_cast<std::size_t>(c)] += rev.cap;
        }
    return solution;
}

std::vector<std::vector<Item>> place_small_items(std::vector<Bin>& bins, const LpsSolution& lps,
                                                 std::vector<std::vector<Item>> smalls_by_colour) {
    std::vector<std::vector<Item>> overflow(smalls_by_colour.size());
    for (std::size_t c = 0; c < smalls_by_colour.size(); ++c) {
        std::deque<Item> queue(smalls_by_colour[c].begin(), smalls_by_colour[c].end());
        for (std::size_t b = 0; b < bins.size() && !queue.empty(); ++b) {
            const Rational& quota = lps.quota[b][c];
            if (quota.is_zero()) continue;
            Rational placed;
            while (!queue.empty() && placed + queue.front().size <= quota) {
                placed += queue.front().size;
                bins[b].add(queue.front());
                queue.pop_front();
            }
        }
        overflow[c].assign(queue.begin(), queue.end());
    }
    return overflow;
}

std::vector<Bin> pack_groups_ff(const std::vector<std::vector<Item>>& per_colour, int& next_id) {
    std::vector<Bin> bins;
    for (const auto& group : per_colour) {
        for (const auto& item : group) {
            bool placed = false;
            for (auto& bin : bins) {
                if (bin.free_space() < item.size) continue;
                bin.add(item);
                placed = true;
                break;
            }
            if (!placed) {
                Bin bin;
                bin.id = next_id++;
                bin.add(item);
                bins.push_back(std::move(bin));
            }
        }
    }
    return bins;
}

namespace {

struct AssemblyInputs {
    const std::vector<LabelledConfiguration>& configs;
    const std::vector<SizeClass>& classes;
    const std::vector<Bin>& q_bins; // ids re-assigned per candidate
    const std::vector<std::vector<Item>>& smalls_by_colour;
    int colour_count;
};

Packing assemble(const Candidate& candidate, const AssemblyInputs& in) {
    // expand configurations into bins and collect per-class slot positions
    std::vector<Bin> bins;
    std::vector<std::uint32_t> labels;
    std::vector<std::vector<std::size_t>> slots(in.classes.size()); // class -> bin indices, one per slot
    for (const auto& [cfg_index, mult] : candidate.config_mults) {
        const auto& config = in.configs[static_cast<std::size_t>(cfg_index)];
        for (int copy = 0; copy < mult; ++copy) {
            Bin bin;
            bin.id = static_cast<int>(bins.size());
            bins.push_back(std::move(bin));
            labels.push_back(config.colour_label);
            for (std::size_t cls = 0; cls < in.classes.size(); ++cls)
                for (int s = 0; s < config.counts[cls]; ++s)
                    slots[cls].push_back(bins.size() - 1);
        }
    }

    // domination shift: slots of a class hold the original items of the next
    // group (receivers), largest first; spare slots stay empty
    for (std::size_t cls = 0; cls < in.classes.size(); ++cls) {
        const auto& receivers = in.classes[cls].receivers;
        for (std::size_t i = 0; i < receivers.size(); ++i)
            bins[slots[cls][i]].add(receivers[i]);
    }

    // very large items (Q) keep their own bins, closed to small items
    int next_id = static_cast<int>(bins.size());
    std::vector<Bin> q_bins = in.q_bins;
    for (auto& bin : q_bins) bin.id = next_id++;

    LpsProblem lps;
    lps.supplies.resize(static_cast<std::size_t>(in.colour_count));
    for (int c = 0; c < in.colour_count; ++c)
        for (const auto& item : in.smalls_by_colour[static_cast<std::size_t>(c)])
            lps.supplies[static_cast<std::size_t>(c)] += item.size;
    for (std::size_t b = 0; b < bins.size(); ++b)
        lps.bins.push_back({bins[b].content_size(), labels[b]});

    LpsSolution solution = solve_lps(lps);
    auto overflow = place_small_items(bins, solution, in.smalls_by_colour);
    std::vector<Bin> overflow_bins = pack_groups_ff(overflow, next_id);

    Packing packing;
    for (auto& bin : bins)
        if (!bin.contents.empty()) packing.bins.push_back(std::move(bin));
    for (auto& bin : q_bins) packing.bins.push_back(std::move(bin));
    for (auto& bin : overflow_bins) packing.bins.push_back(std::move(bin));
    for (std::size_t i = 0; i < packing.bins.size(); ++i)
        packing.bins[i].id = static_cast<int>(i);
    packing.algorithm = "aptas";
    return packing;
}

} // namespace

Packing pack(const Instance& instance, const Params& params,
             const std::vector<std::int64_t>& per_colour_opt) {
    const int m = instance.colour_count;
    if (m < 1) throw PreconditionError("aptas: instance needs at least one colour");
    if (m > 20) throw PreconditionError("aptas: more than 20 colours unsupported");
    if (static_cast<int>(per_colour_opt.size()) != m)
        throw PreconditionError("aptas: per_colour_opt must have one entry per colour");
    if (params.beta < Rational(1)) throw PreconditionError("aptas: beta must be >= 1");

    Rational eps = params.eps;
    if (params.rescale_eps_by_m) eps = eps / Rational(m);
    if (eps <= Rational(0) || eps >= Rational(1))
        throw PreconditionError("aptas: eps must lie in (0,1) after rescaling");

    auto [large, small] = split_small_large(instance, eps);
    Grouping grouping = group_round_down(large, eps, m);
    auto classes = build_classes(grouping);

    std::vector<std::vector<Item>> smalls_by_colour(static_cast<std::size_t>(m));
    Rational small_weight;
    for (const auto& item : small) {
        smalls_by_colour[static_cast<std::size_t>(item.colour - 1)].push_back(item);
        small_weight += item.size;
    }

    // in a minimal packing no two bins can merge, so bins < 2W + 1; also
    // never more bins than items
    const Rational total_weight = instance.total_size();
    int max_bins = static_cast<int>(std::min<std::int64_t>(
        static_cast<std::int64_t>(instance.items.size()),
        (total_weight + total_weight).floor() + 1));
    max_bins = std::max(max_bins, 1);
    const int max_empty_bins =
        std::min<int>(max_bins, static_cast<int>((small_weight + small_weight).ceil()) + 1);

    std::uint32_t labellable = 0;
    for (int c = 0; c < m; ++c)
        if (!smalls_by_colour[static_cast<std::size_t>(c)].empty())
            labellable |= std::uint32_t{1} << c;
    auto configs =
        enumerate_configurations(classes, m, labellable, params.budgets.max_configurations);
    auto candidates = search_packings(configs, classes, params.beta, per_colour_opt, max_bins,
                                      max_empty_bins, params.budgets);
    if (candidates.empty())
        throw PreconditionError(
            "aptas: no packing meets the colour-stretch filter (instance admits no such packing "
            "or the per-colour optima are lower bounds)");

    // Q is independent of the candidate; pack it once
    std::vector<std::vector<Item>> q_by_colour(static_cast<std::size_t>(m));
    for (const auto& item : grouping.q_items)
        q_by_colour[static_cast<std::size_t>(item.colour - 1)].push_back(item);
    int q_id = 0;
    std::vector<Bin> q_bins = pack_groups_ff(q_by_colour, q_id);

    AssemblyInputs inputs{configs, classes, q_bins, smalls_by_colour, m};

    // colour-stretch acceptance for the assembled packing, additive slack
    // included
    const Rational stretch_factor = params.beta * (Rational(1) + eps + eps);
    auto passes = [&](const std::vector<int>& spans) {
        for (int c = 0; c < m; ++c) {
            if (per_colour_opt[static_cast<std::size_t>(c)] == 0) continue;
            Rational bound =
                stretch_factor * Rational(per_colour_opt[static_cast<std::size_t>(c)]) + Rational(3);
            if (Rational(spans[static_cast<std::size_t>(c)]) > bound) return false;
        }
        return true;
    };
    auto max_stretch = [&](const std::vector<int>& spans) {
        Rational worst;
        for (int c = 0; c < m; ++c) {
            std::int64_t opt = std::max<std::int64_t>(1, per_colour_opt[static_cast<std::size_t>(c)]);
            worst = max(worst, Rational(spans[static_cast<std::size_t>(c)], opt));
        }
        return worst;
    };

    std::optional<Packing> best;
    Rational best_stretch;
    int best_bins = std::numeric_limits<int>::max();
    for (const auto& candidate : candidates) {
        // quick skip: even if every slot-less bin drops, the candidate cannot
        // beat the incumbent
        int must_keep = static_cast<int>(q_bins.size());
        for (const auto& [cfg_index, mult] : candidate.config_mults) {
            const auto& config = configs[static_cast<std::size_t>(cfg_index)];
            bool has_receivers = false;
            for (std::size_t cls = 0; cls < classes.size(); ++cls)
                if (config.counts[cls] > 0 && !classes[cls].receivers.empty()) {
                    has_receivers = true;
                    break;
                }
            if (has_receivers) must_keep += mult;
        }
        if (must_keep > best_bins) continue;

        Packing packing = assemble(candidate, inputs);
        auto spans = spans_by_colour(packing, m);
        if (!passes(spans)) continue;
        Rational stretch = max_stretch(spans);
        if (packing.total_bins() < best_bins ||
            (packing.total_bins() == best_bins && best && stretch < best_stretch)) {
            best_bins = packing.total_bins();
            best_stretch = stretch;
            best = std::move(packing);
        }
    }
    if (!best)
        throw PreconditionError("aptas: no assembled packing met the colour-stretch bound");
    best->params = "epsilon=" + params.eps.str() + ";beta=" + params.beta.str() +
                   (params.rescale_eps_by_m ? ";rescaled" : "");
    return *std::move(best);
}

} // namespace cbp::aptas
