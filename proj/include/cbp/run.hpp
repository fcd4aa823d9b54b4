#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cbp/aptas.hpp"
#include "cbp/model.hpp"
#include "cbp/offline.hpp"
#include "cbp/online.hpp"

namespace cbp::run {

/// Algorithm names accepted by the CLI and bench manifests:
/// nf ff ffd bf bbf mnf mff level17 threshold vl1eps off17 aptas.
struct AlgoSpec {
    std::string name;
    std::optional<Rational> eps;
    std::optional<Rational> beta;
    int k = 2;
    offline::SearchBudget offline_budget;
    aptas::Budgets aptas_budgets;
    int oracle_limit_n = 16; // per-colour oracle ceiling for the aptas filter
    bool aptas_rescale = false;
};

struct RunResult {
    Packing packing;
    std::vector<online::PlacementEvent> events;
    // aptas only: where its per-colour filter optima came from
    std::optional<OptSource> filter_source;
};

bool algorithm_known(const std::string& name);

/// Canonical "key=value;..." string for reports.
std::string params_string(const AlgoSpec& spec);

RunResult run_algorithm(const AlgoSpec& spec, const Instance& instance);

/// Item -> placement events in arrival order, reconstructed from a finished
/// packing (used for algorithms that pack in batch).
std::vector<online::PlacementEvent> events_from_packing(const Packing& packing,
                                                        const Instance& instance);

} // namespace cbp::run
