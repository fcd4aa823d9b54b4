#include "cbp/run.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "cbp/classic.hpp"
#include "cbp/oracle.hpp"

namespace cbp::run {

namespace {

const std::set<std::string> kNames = {"nf",  "ff",  "ffd",     "bf",     "bbf",   "mnf",
                                      "mff", "level17", "threshold", "vl1eps", "off17", "aptas"};

bool is_online(const std::string& name) {
    return name == "mnf" || name == "mff" || name == "level17" || name == "threshold";
}

} // namespace

bool algorithm_known(const std::string& name) { return kNames.count(name) > 0; }

std::string params_string(const AlgoSpec& spec) {
    std::string out;
    auto append = [&](const std::string& part) {
        if (!out.empty()) out += ';';
        out += part;
    };
    if (spec.eps) append("epsilon=" + spec.eps->str());
    if (spec.beta) append("beta=" + spec.beta->str());
    if (spec.name == "bbf") append("k=" + std::to_string(spec.k));
    if (spec.aptas_rescale) append("rescaled");
    return out;
}

std::vector<online::PlacementEvent> events_from_packing(const Packing& packing,
                                                        const Instance& instance) {
    struct Location {
        int bin_id;
        bool isolated;
        int level;
        int region;
    };
    std::unordered_map<int, Location> where;
    for (const auto& bin : packing.bins) {
        for (const auto& item : bin.contents)
            where[item.id] = {bin.id, bin.kind == BinKind::isolated, 0, -1};
        if (bin.kind == BinKind::level)
            for (std::size_t r = 0; r < bin.regions.size(); ++r)
                for (int id : bin.regions[r].item_ids) {
                    where[id].level = bin.level;
                    where[id].region = static_cast<int>(r);
                }
    }
    std::vector<online::PlacementEvent> events;
    events.reserve(instance.items.size());
    for (const auto& item : instance.items) {
        auto it = where.find(item.id);
        if (it == where.end()) continue; // caller validates separately
        events.push_back(
            {item.id, it->second.bin_id, it->second.isolated, it->second.level, it->second.region});
    }
    return events;
}

RunResult run_algorithm(const AlgoSpec& spec, const Instance& instance) {
    if (!algorithm_known(spec.name))
        throw PreconditionError("unknown algorithm '" + spec.name + "'");
    instance.check();

    auto need_eps = [&]() -> const Rational& {
        if (!spec.eps) throw PreconditionError("algorithm '" + spec.name + "' needs epsilon");
        return *spec.eps;
    };

    RunResult result;
    if (spec.name == "nf") {
        result.packing = classic::next_fit(instance.items);
    } else if (spec.name == "ff") {
        result.packing = classic::first_fit(instance.items);
    } else if (spec.name == "ffd") {
        result.packing = classic::first_fit_decreasing(instance.items);
    } else if (spec.name == "bf") {
        result.packing = classic::best_fit(instance.items);
    } else if (spec.name == "bbf") {
        result.packing = classic::bounded_best_fit(instance.items, spec.k);
    } else if (is_online(spec.name)) {
        online::OnlineParams params;
        params.eps = spec.eps;
        params.k = spec.k;
        auto algorithm = online::make_online(spec.name, params);
        for (const auto& item : instance.items) result.events.push_back(algorithm->pack(item));
        result.packing = algorithm->snapshot();
        return result;
    } else if (spec.name == "vl1eps") {
        result.packing = offline::one_plus_eps_pack(instance, need_eps(), spec.offline_budget);
    } else if (spec.name == "off17") {
        result.packing = offline::colour_merge_pack(instance, need_eps(), spec.offline_budget);
    } else if (spec.name == "aptas") {
        if (!spec.beta) throw PreconditionError("aptas needs beta");
        aptas::Params params{need_eps(), *spec.beta, spec.aptas_budgets, spec.aptas_rescale};
        // the colour-stretch filter wants exact per-colour optima; fall back
        // to weight lower bounds when any colour is too big for the oracle
        bool oracle_ok = true;
        for (int c = 1; c <= instance.colour_count; ++c)
            if (static_cast<int>(instance.of_colour(c).size()) > spec.oracle_limit_n)
                oracle_ok = false;
        std::vector<std::int64_t> opts(static_cast<std::size_t>(instance.colour_count), 0);
        for (int c = 1; c <= instance.colour_count; ++c) {
            auto colour_items = instance.of_colour(c);
            if (colour_items.empty()) continue;
            opts[static_cast<std::size_t>(c - 1)] =
                oracle_ok ? oracle::exact_opt(colour_items, spec.oracle_limit_n)
                          : weight_lower_bound(colour_items);
            if (opts[static_cast<std::size_t>(c - 1)] < 1)
                opts[static_cast<std::size_t>(c - 1)] = 1;
        }
        result.filter_source =
            oracle_ok ? OptSource::exact_oracle : OptSource::weight_lower_bound;
        result.packing = aptas::pack(instance, params, opts);
    }
    result.events = events_from_packing(result.packing, instance);
    return result;
}

} // namespace cbp::run
