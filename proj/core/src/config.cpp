#include "fracperc/config.hpp"

#include <cmath>
#include <string>

namespace fracperc {

namespace detail {

void check_generation_request(const ProcessParams& params, int n, const GenerateOptions& opt) {
    if (params.d > 16) throw std::invalid_argument("d: dimensions above 16 are not supported");
    std::uint64_t side = grid_side(params.N, n);  // throws past 32-bit coordinates

    // packed indices must fit 64 bits
    long double space = std::pow(static_cast<long double>(side), params.d);
    if (space > std::pow(2.0L, 64))
        throw ResourceError("grid: N^(d*n) index space exceeds 64-bit packing");

    if (LevelConfiguration::use_dense(params.d, side)) {
        long double bytes = static_cast<long double>(side) * side / 8.0L;
        if (bytes > opt.budget_bytes)
            throw ResourceError("grid: dense bit-grid of " + std::to_string(side) + "^2 cells exceeds memory budget");
    } else {
        long double expected = std::pow(params.p * std::pow((long double)params.N, params.d),
                                        static_cast<long double>(n));
        if (expected * 8.0L > opt.budget_bytes)
            throw ResourceError("grid: expected retained cells exceed memory budget");
    }
}

void check_live_budget(std::uint64_t cells, const GenerateOptions& opt) {
    if (static_cast<long double>(cells) * 8.0L > opt.budget_bytes)
        throw ResourceError("grid: retained cell set exceeds memory budget");
}

}  // namespace detail

LevelConfiguration LevelConfiguration::from_packed(const ProcessParams& params, int level,
                                                   std::vector<std::uint64_t> alive) {
    LevelConfiguration c;
    c.params_ = params;
    c.level_ = level;
    c.side_ = grid_side(params.N, level);
    c.z_ = alive.size();
    c.dense_ = use_dense(params.d, c.side_);
    if (c.dense_) {
        c.bits_.assign((c.side_ * c.side_ + 63) / 64, 0);
        for (std::uint64_t idx : alive) c.bits_[idx >> 6] |= std::uint64_t{1} << (idx & 63);
    } else {
        c.cells_ = std::move(alive);
    }
    return c;
}

LevelConfiguration generate_level(const ProcessParams& params, int n, const GenerateOptions& opt) {
    RetentionOracle oracle(params.seed);
    double p = params.p;
    return generate_level_with(
        params, n, [&](int m, std::span<const Coord> k) { return oracle.retained(m, k, p); },
        opt);
}

std::vector<LevelConfiguration> generate_levels(const ProcessParams& params, int n,
                                                const GenerateOptions& opt) {
    RetentionOracle oracle(params.seed);
    double p = params.p;
    return generate_levels_with(
        params, n, [&](int m, std::span<const Coord> k) { return oracle.retained(m, k, p); },
        opt);
}

LevelConfiguration LevelConfiguration::without_subtrees(const std::vector<CellIndex>& cells) const {
    std::vector<std::uint64_t> keep;
    keep.reserve(z_);
    std::vector<Coord> buf(params_.d);
    for_each_packed([&](std::uint64_t idx) {
        unpack(idx, buf);
        for (const CellIndex& cell : cells) {
            if (cell.level > level_) throw std::invalid_argument("whiten: cell level exceeds configuration level");
            std::uint64_t ratio = 1;
            for (int i = cell.level; i < level_; ++i) ratio *= params_.N;
            bool inside = true;
            for (std::uint32_t l = 0; l < params_.d; ++l) {
                if ((buf[l] - 1) / ratio != cell.k[l] - 1) {
                    inside = false;
                    break;
                }
            }
            if (inside) return;
        }
        keep.push_back(idx);
    });
    return from_packed(params_, level_, std::move(keep));
}

SubprocessView::SubprocessView(ProcessParams parent, CellIndex root)
    : parent_(parent), root_(std::move(root)) {
    validate_cell(parent_, root_);
}

bool SubprocessView::retain_decision(const CellIndex& view_cell) const {
    if (view_cell.level < 1) throw std::invalid_argument("cell: level must be >= 1");
    if (view_cell.k.size() != parent_.d) throw std::invalid_argument("cell: coordinate arity != d");
    std::uint64_t scale = grid_side(parent_.N, view_cell.level);
    CellIndex mapped;
    mapped.level = root_.level + view_cell.level;
    mapped.k.resize(parent_.d);
    for (std::uint32_t l = 0; l < parent_.d; ++l) {
        if (view_cell.k[l] < 1 || view_cell.k[l] > scale)
            throw std::invalid_argument("cell: coordinate out of [1, N^n]");
        mapped.k[l] = static_cast<Coord>((static_cast<std::uint64_t>(root_.k[l]) - 1) * scale +
                                         view_cell.k[l]);
    }
    return fracperc::retain_decision(parent_, mapped);
}

LevelConfiguration SubprocessView::generate(int m, const GenerateOptions& opt) const {
    RetentionOracle oracle(parent_.seed);
    double p = parent_.p;
    int base = root_.level;
    grid_side(parent_.N, base + m);  // the mapped coordinates must stay representable
    std::vector<Coord> mapped(parent_.d);
    const std::vector<Coord>& rk = root_.k;
    std::uint32_t N = parent_.N;
    return generate_level_with(
        parent_, m,
        [&](int lvl, std::span<const Coord> k) {
            std::uint64_t scale = 1;
            for (int i = 0; i < lvl; ++i) scale *= N;
            for (std::size_t l = 0; l < k.size(); ++l)
                mapped[l] =
                    static_cast<Coord>((static_cast<std::uint64_t>(rk[l]) - 1) * scale + k[l]);
            return oracle.retained(base + lvl, mapped, p);
        },
        opt);
}

}  // namespace fracperc
