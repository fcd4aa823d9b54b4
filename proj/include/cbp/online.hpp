#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cbp/model.hpp"

namespace cbp::online {

struct PlacementEvent {
    int item_id = 0;
    int bin_id = 0;
    bool isolated = false;
    int level = 0;   // 0: not a level placement
    int region = -1; // -1: not a region placement
};

/// One item in, one placement out; no lookahead by construction.
class OnlineAlgorithm {
  public:
    virtual ~OnlineAlgorithm() = default;
    virtual void reset() = 0;
    virtual PlacementEvent pack(const Item& item) = 0;
    virtual Packing snapshot() const = 0;
    virtual std::string name() const = 0;
};

enum class RegionRule {
    next_fit,  // MNF: only the colour's current (highest) region is tried
    first_fit, // MFF: the colour's regions are tried from the lowest level up
};

/// Level/region scheme for items of size >= eps (eps = 1/2^j): non-isolated
/// level-i bins split into 1/(2^i eps) monochromatic regions of size 2^i eps;
/// a colour that reaches level j moves to its own isolated bins packed by
/// bounded best-fit with k=2 (seeded with its level-j bin).
class LevelScheme final : public OnlineAlgorithm {
  public:
    LevelScheme(const Rational& eps, RegionRule rule, std::string name = {});

    void reset() override;
    PlacementEvent pack(const Item& item) override;
    Packing snapshot() const override;
    std::string name() const override { return name_; }

    int level_count() const { return levels_; }
    const Rational& eps() const { return eps_; }

    /// Open non-isolated bins = level bins that still have unclaimed regions.
    int open_non_isolated_bins() const;
    /// Open isolated bins of one colour (0..2).
    int open_isolated_bins(int colour) const;
    bool colour_isolated(int colour) const;

  private:
    struct RegionRef {
        std::size_t bin_index;
        std::size_t region_index;
    };
    struct ColourState {
        int level = 0;                     // highest level holding this colour
        std::map<int, RegionRef> regions;  // level -> its region
        bool isolated = false;
        std::vector<std::size_t> open_isolated; // bin indices, at most 2
    };

    Rational region_capacity(int level) const;
    PlacementEvent place_in_region(const Item& item, const RegionRef& ref);
    PlacementEvent place_isolated(const Item& item, ColourState& state);

    Rational eps_;
    int levels_ = 0; // j
    RegionRule rule_;
    std::string name_;
    std::vector<Bin> bins_;
    std::vector<int> open_level_bin_; // per level: bin index with unclaimed regions, or -1
    std::map<int, ColourState> colours_;
    int next_id_ = 0;
};

/// Threshold scheme for items of size >= eps: a colour shares first-fit bins
/// until the weight it packed there passes g = 1/eps, then gets first-fit
/// bins of its own.
class ThresholdScheme final : public OnlineAlgorithm {
  public:
    explicit ThresholdScheme(const Rational& eps);

    void reset() override;
    PlacementEvent pack(const Item& item) override;
    Packing snapshot() const override;
    std::string name() const override { return "threshold"; }

    Rational colour_weight(int colour) const;
    bool colour_isolated(int colour) const;

  private:
    struct ColourState {
        Rational shared_weight; // sizes packed in the shared pool only
        std::vector<std::size_t> isolated;
    };

    Rational eps_;
    Rational threshold_; // g = 1/eps
    std::vector<Bin> bins_;
    std::vector<std::size_t> shared_;
    std::map<int, ColourState> colours_;
    int next_id_ = 0;
};

/// Classic online baselines behind the same interface.
class FirstFitOnline final : public OnlineAlgorithm {
  public:
    void reset() override { bins_.clear(); }
    PlacementEvent pack(const Item& item) override;
    Packing snapshot() const override;
    std::string name() const override { return "ff"; }

  private:
    std::vector<Bin> bins_;
};

class NextFitOnline final : public OnlineAlgorithm {
  public:
    void reset() override { bins_.clear(); }
    PlacementEvent pack(const Item& item) override;
    Packing snapshot() const override;
    std::string name() const override { return "nf"; }

  private:
    std::vector<Bin> bins_;
};

class BoundedBestFitOnline final : public OnlineAlgorithm {
  public:
    explicit BoundedBestFitOnline(int k, std::string name);
    void reset() override;
    PlacementEvent pack(const Item& item) override;
    Packing snapshot() const override;
    std::string name() const override { return name_; }

  private:
    int k_;
    std::string name_;
    std::vector<Bin> closed_, open_;
    int next_id_ = 0;
};

struct OnlineParams {
    std::optional<Rational> eps;
    int k = 2;
};

/// Names: nf | ff | bf | bbf | mnf | mff | level17 | threshold.
std::unique_ptr<OnlineAlgorithm> make_online(const std::string& name, const OnlineParams& params);

/// Fill statistics over non-isolated level bins whose regions are all used;
/// the quantity bounded below by 1/3 on average.
struct LevelFillStats {
    Rational total_fill;
    int bins = 0;
};
LevelFillStats full_level_bin_fill(const Packing& packing);

} // namespace cbp::online
