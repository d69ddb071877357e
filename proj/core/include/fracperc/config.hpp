#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "fracperc/hashrng.hpp"
#include "fracperc/params.hpp"

namespace fracperc {

struct GenerateOptions {
    double budget_bytes = 2.0 * 1024 * 1024 * 1024;  // refusal threshold, not an allocation
};

/// Retained level-n cells of C^n. Dense bit-grid when d=2 and N^n <= 8192,
/// sorted packed indices otherwise. Immutable after construction.
class LevelConfiguration {
  public:
    LevelConfiguration() = default;

    const ProcessParams& params() const { return params_; }
    int level() const { return level_; }
    std::uint64_t side() const { return side_; }
    std::uint64_t z() const { return z_; }
    bool dense() const { return dense_; }
    bool empty() const { return z_ == 0; }

    /// Mixed-radix packing, axis 0 fastest: sum (k_l - 1) * side^l.
    std::uint64_t pack(std::span<const Coord> k) const {
        std::uint64_t idx = 0, stride = 1;
        for (std::size_t l = 0; l < k.size(); ++l) {
            idx += (k[l] - 1) * stride;
            stride *= side_;
        }
        return idx;
    }

    void unpack(std::uint64_t idx, std::span<Coord> out) const {
        for (std::size_t l = 0; l < out.size(); ++l) {
            out[l] = static_cast<Coord>(idx % side_) + 1;
            idx /= side_;
        }
    }

    bool retained_packed(std::uint64_t idx) const {
        if (dense_) return (bits_[idx >> 6] >> (idx & 63)) & 1;
        return std::binary_search(cells_.begin(), cells_.end(), idx);
    }

    bool retained(std::span<const Coord> k) const {
        for (Coord c : k)
            if (c < 1 || c > side_) return false;
        return retained_packed(pack(k));
    }

    /// d=2 fast path, 1-based coordinates; out-of-range counts as not retained.
    bool retained2(std::int64_t x, std::int64_t y) const {
        if (x < 1 || y < 1 || static_cast<std::uint64_t>(x) > side_ ||
            static_cast<std::uint64_t>(y) > side_)
            return false;
        std::uint64_t idx = static_cast<std::uint64_t>(y - 1) * side_ + (x - 1);
        if (dense_) return (bits_[idx >> 6] >> (idx & 63)) & 1;
        return std::binary_search(cells_.begin(), cells_.end(), idx);
    }

    template <class F>
    void for_each_packed(F&& f) const {
        if (dense_) {
            for (std::uint64_t w = 0; w < bits_.size(); ++w) {
                std::uint64_t word = bits_[w];
                while (word) {
                    int b = std::countr_zero(word);
                    f(w * 64 + b);
                    word &= word - 1;
                }
            }
        } else {
            for (std::uint64_t idx : cells_) f(idx);
        }
    }

    template <class F>
    void for_each_cell(F&& f) const {
        std::vector<Coord> buf(params_.d);
        for_each_packed([&](std::uint64_t idx) {
            unpack(idx, buf);
            f(std::span<const Coord>(buf));
        });
    }

    std::vector<CellIndex> cells() const {
        std::vector<CellIndex> out;
        out.reserve(z_);
        for_each_cell([&](std::span<const Coord> k) {
            out.push_back(CellIndex{level_, {k.begin(), k.end()}});
        });
        return out;
    }

    /// Ancestor cell index at level m <= level, packed on the level-m grid.
    std::uint64_t ancestor_packed(std::uint64_t idx, int m) const {
        std::uint64_t ratio = 1;
        for (int i = m; i < level_; ++i) ratio *= params_.N;
        std::uint64_t aside = side_ / ratio, out = 0, stride = 1;
        for (std::uint32_t l = 0; l < params_.d; ++l) {
            out += (idx % side_) / ratio * stride;
            idx /= side_;
            stride *= aside;
        }
        return out;
    }

    /// Copy with every descendant of the given level-m cells removed
    /// (the "whitening" overlay used by blocking-set experiments).
    LevelConfiguration without_subtrees(const std::vector<CellIndex>& cells) const;

    friend bool operator==(const LevelConfiguration& a, const LevelConfiguration& b) {
        return a.params_ == b.params_ && a.level_ == b.level_ && a.dense_ == b.dense_ &&
               a.bits_ == b.bits_ && a.cells_ == b.cells_;
    }

    static bool use_dense(std::uint32_t d, std::uint64_t side) {
        return d == 2 && side <= 8192;
    }

    /// Builds a configuration from a final alive list (internal + tests).
    static LevelConfiguration from_packed(const ProcessParams& params, int level,
                                          std::vector<std::uint64_t> alive);

    const std::vector<std::uint64_t>& packed_cells() const { return cells_; }

  private:
    ProcessParams params_;
    int level_ = 0;
    std::uint64_t side_ = 1;
    bool dense_ = false;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint64_t> cells_;
    std::uint64_t z_ = 0;
};

namespace detail {

void check_generation_request(const ProcessParams& params, int n, const GenerateOptions& opt);
void check_live_budget(std::uint64_t cells, const GenerateOptions& opt);

}  // namespace detail

/// Top-down generation with early exit: a cell is only examined if its
/// parent survived. `decide(level, coords)` supplies the per-cell decision
/// with 1-based coordinates. When `collect` is non-null, every intermediate
/// level is materialized as well.
template <class Decide>
LevelConfiguration generate_impl(const ProcessParams& params, int n, Decide&& decide,
                                 const GenerateOptions& opt,
                                 std::vector<LevelConfiguration>* collect) {
    params.validate();
    if (n < 1) throw std::invalid_argument("level: must be >= 1");
    detail::check_generation_request(params, n, opt);

    std::vector<std::uint64_t> alive{0};  // packed at current level; level 0 = root
    std::uint64_t prev_side = 1;
    std::vector<Coord> parent(params.d);   // 0-based parent coords
    std::vector<Coord> child(params.d);    // child offsets in [0, N)
    Coord coords[16];                      // 1-based child coords for decide()

    for (int m = 1; m <= n; ++m) {
        std::uint64_t side = prev_side * params.N;
        std::vector<std::uint64_t> next;
        next.reserve(alive.size());
        for (std::uint64_t pidx : alive) {
            for (std::uint32_t l = 0; l < params.d; ++l) {
                parent[l] = static_cast<Coord>(pidx % prev_side);
                pidx /= prev_side;
            }
            std::fill(child.begin(), child.end(), 0);
            while (true) {
                std::uint64_t cidx = 0, stride = 1;
                for (std::uint32_t l = 0; l < params.d; ++l) {
                    std::uint64_t c0 = static_cast<std::uint64_t>(parent[l]) * params.N + child[l];
                    cidx += c0 * stride;
                    stride *= side;
                    coords[l] = static_cast<Coord>(c0 + 1);
                }
                if (decide(m, std::span<const Coord>(coords, params.d))) next.push_back(cidx);
                std::uint32_t l = 0;
                while (l < params.d && ++child[l] == params.N) child[l++] = 0;
                if (l == params.d) break;
            }
        }
        detail::check_live_budget(next.size(), opt);
        std::sort(next.begin(), next.end());
        if (collect) collect->push_back(LevelConfiguration::from_packed(params, m, next));
        alive = std::move(next);
        prev_side = side;
    }
    if (collect) return collect->back();
    return LevelConfiguration::from_packed(params, n, std::move(alive));
}

template <class Decide>
LevelConfiguration generate_level_with(const ProcessParams& params, int n, Decide&& decide,
                                       const GenerateOptions& opt = {}) {
    return generate_impl(params, n, std::forward<Decide>(decide), opt, nullptr);
}

template <class Decide>
std::vector<LevelConfiguration> generate_levels_with(const ProcessParams& params, int n,
                                                     Decide&& decide,
                                                     const GenerateOptions& opt = {}) {
    std::vector<LevelConfiguration> out;
    out.reserve(n);
    generate_impl(params, n, std::forward<Decide>(decide), opt, &out);
    return out;
}

/// The level-n configuration of the seeded process.
LevelConfiguration generate_level(const ProcessParams& params, int n,
                                  const GenerateOptions& opt = {});

/// All of C^1..C^n in one pass (shared ancestor evaluation).
std::vector<LevelConfiguration> generate_levels(const ProcessParams& params, int n,
                                                const GenerateOptions& opt = {});

/// Rescaled restriction of the parent process to `root`: the view's level-m
/// configuration uses the parent's decisions at levels root.level+1 .. +m,
/// conditioning on nothing above the root.
class SubprocessView {
  public:
    SubprocessView(ProcessParams parent, CellIndex root);

    const ProcessParams& params() const { return parent_; }
    const CellIndex& root() const { return root_; }

    bool retain_decision(const CellIndex& view_cell) const;
    LevelConfiguration generate(int m, const GenerateOptions& opt = {}) const;

  private:
    ProcessParams parent_;
    CellIndex root_;
};

}  // namespace fracperc
