#include "cbp/instances.hpp"

#include <algorithm>
#include <random>

namespace cbp::instances {

GeneratedInstance gen_theorem1(int n, const Rational& eps) {
    if (n < 1) throw PreconditionError("theorem1: n must be >= 1");
    if (!eps.is_unit_fraction() || eps <= Rational(0))
        throw PreconditionError("theorem1: eps must be 1/x for an integer x");
    if (eps >= Rational(1, 4)) throw PreconditionError("theorem1: requires eps < 1/4");
    const Rational delta = eps + eps;

    GeneratedInstance out;
    out.family = "theorem1";
    out.params = "n=" + std::to_string(n) + ";epsilon=" + eps.str();
    out.instance.colour_count = n + 1;
    int id = 0;
    for (int c = 1; c <= n; ++c) out.instance.items.push_back({id++, Rational(1) - delta, c});
    for (int i = 0; i < n; ++i) out.instance.items.push_back({id++, delta, n + 1});
    out.opt_bins = n; // one big plus one small item fill each bin exactly
    for (int c = 1; c <= n; ++c) out.per_colour_opt[c] = 1;
    const std::int64_t per_bin = (Rational(1) / delta).floor();
    out.per_colour_opt[n + 1] = (n + per_bin - 1) / per_bin;
    return out;
}

const std::vector<std::int64_t>& sylvester_sequence() {
    static const std::vector<std::int64_t> seq = [] {
        std::vector<std::int64_t> l{1};
        while (l.size() < 7) l.push_back(l.back() * (l.back() + 1));
        return l;
    }();
    return seq;
}

GeneratedInstance gen_sylvester(int m, int n, const Rational& eps) {
    if (m < 0 || m > 5)
        throw PreconditionError("sylvester: m must lie in 0..5 (sizes get impractically tiny "
                                "beyond)");
    if (n < 1) throw PreconditionError("sylvester: n must be >= 1");
    if (eps <= Rational(0)) throw PreconditionError("sylvester: eps must be positive");
    const auto& l = sylvester_sequence();
    for (int i = 0; i <= m; ++i)
        if (n % l[static_cast<std::size_t>(i)] != 0)
            throw PreconditionError("sylvester: l_" + std::to_string(i) + " = " +
                                    std::to_string(l[static_cast<std::size_t>(i)]) +
                                    " must divide n");
    // one item of each colour per bin must fit, which also keeps l_i items of
    // colour i per bin feasible
    if (Rational(m + 1) * eps > Rational(1, l[static_cast<std::size_t>(m + 1)]))
        throw PreconditionError("sylvester: eps too large; need (m+1)*eps <= 1/" +
                                std::to_string(l[static_cast<std::size_t>(m + 1)]));

    GeneratedInstance out;
    out.family = "sylvester";
    out.params = "m=" + std::to_string(m) + ";n=" + std::to_string(n) + ";epsilon=" + eps.str();
    out.instance.colour_count = m + 1;
    int id = 0;
    for (int i = 0; i <= m; ++i) {
        const Rational size = Rational(1, l[static_cast<std::size_t>(i)] + 1) + eps;
        for (int k = 0; k < n; ++k) out.instance.items.push_back({id++, size, i + 1});
        out.per_colour_opt[i + 1] = n / l[static_cast<std::size_t>(i)];
    }
    out.opt_bins = n;
    return out;
}

GeneratedInstance gen_tightness(int j, const Rational& gamma, int pairs) {
    if (j < 2 || j % 2 != 0) throw PreconditionError("tightness: j must be a positive even integer");
    if (j > 60) throw PreconditionError("tightness: j too large");
    if (pairs < 1) throw PreconditionError("tightness: pairs must be >= 1");
    if (gamma <= Rational(0)) throw PreconditionError("tightness: gamma must be positive");
    const Rational gamma_cap(1, static_cast<std::int64_t>(j - 1) * (std::int64_t{1} << j));
    if (gamma > gamma_cap)
        throw PreconditionError("tightness: gamma must be at most 1/((j-1)*2^j) = " +
                                gamma_cap.str());

    GeneratedInstance out;
    out.family = "tightness";
    out.params = "j=" + std::to_string(j) + ";gamma=" + gamma.str() +
                 ";pairs=" + std::to_string(pairs);
    out.instance.colour_count = 2 * pairs;
    int id = 0;
    for (int p = 0; p < pairs; ++p) {
        const int c = 2 * p + 1;
        const int c_prime = 2 * p + 2;
        for (int i = 0; i <= j - 2; i += 2) {
            const Rational size(1, std::int64_t{1} << (j - i));
            out.instance.items.push_back({id++, size, c});
            out.instance.items.push_back({id++, size + gamma, c});
        }
        for (int i = 1; i <= j - 3; i += 2) {
            const Rational size(1, std::int64_t{1} << (j - i));
            out.instance.items.push_back({id++, size + gamma, c_prime});
            out.instance.items.push_back({id++, size, c_prime});
        }
    }
    return out;
}

GeneratedInstance gen_random(int n, int m, const SizeLaw& law, std::uint64_t seed,
                             std::int64_t max_denominator) {
    if (n < 0) throw PreconditionError("random: n must be >= 0");
    if (m < 1) throw PreconditionError("random: m must be >= 1");
    if (max_denominator < 1) throw PreconditionError("random: max denominator must be >= 1");
    if (law.kind == SizeLaw::Kind::uniform) {
        if (law.lo <= Rational(0) || law.hi > Rational(1) || law.lo > law.hi)
            throw PreconditionError("random: need 0 < lo <= hi <= 1");
    } else if (law.choices.empty()) {
        throw PreconditionError("random: discrete law needs at least one size");
    } else {
        for (const auto& s : law.choices)
            if (s <= Rational(0) || s > Rational(1))
                throw PreconditionError("random: discrete size outside (0,1]");
    }

    GeneratedInstance out;
    out.family = "random";
    out.params = "n=" + std::to_string(n) + ";m=" + std::to_string(m) +
                 ";seed=" + std::to_string(seed);
    out.instance.colour_count = m;
    // mt19937_64 output is pinned by the standard; modulo keeps draws exact
    std::mt19937_64 rng(seed);
    for (int i = 0; i < n; ++i) {
        const int colour = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(m));
        Rational size;
        if (law.kind == SizeLaw::Kind::uniform) {
            const std::int64_t k = static_cast<std::int64_t>(
                rng() % static_cast<std::uint64_t>(max_denominator + 1));
            size = law.lo + (law.hi - law.lo) * Rational(k, max_denominator);
        } else {
            size = law.choices[static_cast<std::size_t>(rng() % law.choices.size())];
        }
        out.instance.items.push_back({i, size, colour});
    }
    return out;
}

Trajectory run_adversary(online::OnlineAlgorithm& algorithm, int n, int rounds) {
    if (n < 2) throw PreconditionError("adversary: n must be >= 2");
    if (rounds < 0) throw PreconditionError("adversary: rounds must be >= 0");
    algorithm.reset();

    Trajectory trajectory;
    const Rational unit(1, n);
    int id = 0;
    for (int round = 1; round <= rounds; ++round) {
        for (int colour = 1; colour <= n; ++colour) {
            Item item{id++, unit, colour};
            try {
                algorithm.pack(item);
            } catch (const PreconditionError& e) {
                trajectory.rejected = true;
                trajectory.rejection = e.what();
                return trajectory;
            }
        }
        Packing snapshot = algorithm.snapshot();
        TrajectoryPoint point;
        point.round = round;
        point.bins = snapshot.total_bins();
        auto spans = spans_by_colour(snapshot, n);
        point.max_span = *std::max_element(spans.begin(), spans.end());
        point.bin_stretch_lb = Rational(point.bins, round); // OPT(I) == round
        const std::int64_t opt_c = (round + n - 1) / n;     // ceil(round / n)
        point.colour_stretch_lb = Rational(point.max_span, opt_c);
        trajectory.points.push_back(point);
    }
    return trajectory;
}

} // namespace cbp::instances
