#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cbp/model.hpp"
#include "cbp/online.hpp"

namespace cbp::instances {

struct GeneratedInstance {
    Instance instance;
    std::optional<std::int64_t> opt_bins;      // recorded by construction
    std::map<int, std::int64_t> per_colour_opt;
    std::string family;
    std::string params;
};

/// n items of size 1-delta (one per colour 1..n) followed by n items of size
/// delta = 2*eps, all of colour n+1. Requires eps = 1/x, eps < 1/4, and
/// delta*n, eps*n integral.
GeneratedInstance gen_theorem1(int n, const Rational& eps);

/// Colours 0..m (stored as 1..m+1), n items each of size 1/(l_i+1) + eps for
/// the Sylvester sequence l_0=1, l_{j+1} = l_j(l_j+1). Requires l_i | n for
/// all i <= m and (m+1)*eps <= 1/l_{m+1} so the recorded optima hold. m <= 5.
GeneratedInstance gen_sylvester(int m, int n, const Rational& eps);

/// Sylvester numbers l_0..l_6.
const std::vector<std::int64_t>& sylvester_sequence();

/// `pairs` colour pairs (c, c') that force the region scheme to waste about
/// two thirds of every region it opens: colour c sends sizes 1/2^(j-i),
/// 1/2^(j-i)+gamma for i = 0,2,...,j-2, colour c' sends 1/2^(j-i)+gamma,
/// 1/2^(j-i) for i = 1,3,...,j-3. Requires j even and
/// gamma <= 1/((j-1)*2^j).
GeneratedInstance gen_tightness(int j, const Rational& gamma, int pairs);

struct SizeLaw {
    enum class Kind { uniform, discrete };
    Kind kind = Kind::uniform;
    Rational lo;                   // uniform bounds, 0 < lo <= hi <= 1
    Rational hi;
    std::vector<Rational> choices; // discrete support

    static SizeLaw uniform(const Rational& lo, const Rational& hi) {
        return {Kind::uniform, lo, hi, {}};
    }
    static SizeLaw discrete(std::vector<Rational> choices) {
        return {Kind::discrete, Rational(0), Rational(0), std::move(choices)};
    }
};

/// Deterministic given the seed; uniform sizes land on the grid
/// lo + k*(hi-lo)/max_denominator.
GeneratedInstance gen_random(int n, int m, const SizeLaw& law, std::uint64_t seed,
                             std::int64_t max_denominator = 1 << 20);

struct TrajectoryPoint {
    int round = 0;
    int bins = 0;
    int max_span = 0;
    Rational bin_stretch_lb;    // bins / round, OPT(I) after round i is exactly i
    Rational colour_stretch_lb; // max span_c / ceil(round/n)
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    bool rejected = false;
    std::string rejection;
};

/// Feeds `rounds` rounds of n items of size 1/n with colours 1..n. If the
/// algorithm rejects an item the run stops with the trajectory so far.
Trajectory run_adversary(online::OnlineAlgorithm& algorithm, int n, int rounds);

} // namespace cbp::instances
