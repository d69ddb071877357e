#include "fracperc/cover.hpp"

#include <string>

namespace fracperc {

CoverChain build_cover_chain(const ProcessParams& params, int n, double epsilon,
                             const GenerateOptions& opt) {
    params.validate();
    if (!(epsilon > 0)) throw std::invalid_argument("epsilon: must be > 0");
    if (n < 1) throw std::invalid_argument("level: must be >= 1");
    if (params.N < 4)
        throw std::invalid_argument("cover: shell geometry requires N >= 4");

    // smallest l with N^-(l-1) <= epsilon/d
    int l = 1;
    double scale = 1.0;  // N^(l-1)
    while (scale < params.d / epsilon) {
        ++l;
        scale *= params.N;
        if (l > 64) throw std::invalid_argument("epsilon: too small for any supported level");
    }
    if (l > n)
        throw std::invalid_argument("epsilon: too small for level " + std::to_string(n) +
                                    "; needs level >= " + std::to_string(l));

    CoverChain chain;
    chain.params = params;
    chain.l = l;
    chain.n = n;
    chain.epsilon = epsilon;

    RetentionOracle oracle(params.seed);
    for (int m = l; m <= n; ++m) {
        // decisions below level m are forced black
        auto config_m = generate_level_with(
            params, n,
            [&](int lvl, std::span<const Coord> k) {
                return lvl < m || oracle.retained(lvl, k, params.p);
            },
            opt);

        std::uint64_t mside = grid_side(params.N, m);
        std::vector<std::uint64_t> w;
        CellIndex cell;
        cell.level = m;
        cell.k.assign(params.d, 1);
        std::uint64_t total = 1;
        for (std::uint32_t i = 0; i < params.d; ++i) total *= mside;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t t = idx;
            for (std::uint32_t i = 0; i < params.d; ++i) {
                cell.k[i] = static_cast<Coord>(t % mside) + 1;
                t /= mside;
            }
            if (!oracle.retained(m, cell.k, params.p)) continue;
            ShellSpec shell = ShellSpec::around_cell(params, cell);
            if (shell_crossing(config_m, shell)) w.push_back(idx);
        }
        chain.w_sets.push_back(std::move(w));
    }

    // V_n: descend the chain, keeping children whose own level is in W
    std::vector<std::uint64_t> candidates = chain.w_sets.front();
    std::uint64_t side = grid_side(params.N, l);
    for (int m = l + 1; m <= n; ++m) {
        const auto& wm = chain.w(m);
        std::uint64_t next_side = side * params.N;
        std::vector<std::uint64_t> next;
        std::vector<Coord> parent(params.d), child(params.d);
        for (std::uint64_t idx : candidates) {
            std::uint64_t t = idx;
            for (std::uint32_t i = 0; i < params.d; ++i) {
                parent[i] = static_cast<Coord>(t % side);
                t /= side;
            }
            std::fill(child.begin(), child.end(), 0);
            while (true) {
                std::uint64_t cidx = 0, stride = 1;
                for (std::uint32_t i = 0; i < params.d; ++i) {
                    cidx += (static_cast<std::uint64_t>(parent[i]) * params.N + child[i]) * stride;
                    stride *= next_side;
                }
                if (std::binary_search(wm.begin(), wm.end(), cidx)) next.push_back(cidx);
                std::uint32_t i = 0;
                while (i < params.d && ++child[i] == params.N) child[i++] = 0;
                if (i == params.d) break;
            }
        }
        std::sort(next.begin(), next.end());
        candidates = std::move(next);
        side = next_side;
    }

    chain.v.N = params.N;
    chain.v.d = params.d;
    chain.v.level = n;
    chain.v.side = grid_side(params.N, n);
    chain.v.packed = std::move(candidates);
    return chain;
}

bool cover_property_holds(const ComponentLabeling& labeling, const CoverChain& chain) {
    const auto& cells = labeling.sorted_cells();
    const auto& labels = labeling.labels();
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (labeling.components()[labels[i]].diameter >= chain.epsilon &&
            !chain.v.contains(cells[i]))
            return false;
    }
    return true;
}

}  // namespace fracperc
