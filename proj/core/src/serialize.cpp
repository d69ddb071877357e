#include "fracperc/serialize.hpp"

#include <fstream>

#include "json.hpp"

namespace fracperc {

namespace {

void put_varint(std::string& out, std::uint64_t v) {
    while (v >= 0x80) {
        out.push_back(static_cast<char>((v & 0x7f) | 0x80));
        v >>= 7;
    }
    out.push_back(static_cast<char>(v));
}

std::uint64_t get_varint(const std::string& in, std::size_t& pos) {
    std::uint64_t v = 0;
    int shift = 0;
    while (pos < in.size()) {
        std::uint8_t b = static_cast<std::uint8_t>(in[pos++]);
        v |= static_cast<std::uint64_t>(b & 0x7f) << shift;
        if (!(b & 0x80)) return v;
        shift += 7;
        if (shift > 63) break;
    }
    throw std::runtime_error("cache: truncated varint");
}

}  // namespace

void save_configuration(const LevelConfiguration& config, const std::string& path) {
    nlohmann::json header = {
        {"format", config.dense() ? "grid-rle" : "sparse-delta"},
        {"N", config.params().N},
        {"d", config.params().d},
        {"p", config.params().p},
        {"seed", config.params().seed},
        {"level", config.level()},
        {"z", config.z()},
        {"version", kToolVersion},
    };
    std::string payload;
    if (config.dense()) {
        // alternating run lengths over the row-major bit sequence, 0-runs first
        std::uint64_t total = config.side() * config.side();
        bool current = false;
        std::uint64_t run = 0;
        for (std::uint64_t i = 0; i < total; ++i) {
            bool bit = config.retained_packed(i);
            if (bit == current) {
                ++run;
            } else {
                put_varint(payload, run);
                current = bit;
                run = 1;
            }
        }
        put_varint(payload, run);
    } else {
        put_varint(payload, config.packed_cells().size());
        std::uint64_t prev = 0;
        for (std::uint64_t idx : config.packed_cells()) {
            put_varint(payload, idx - prev);
            prev = idx;
        }
    }

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cache: cannot open " + path + " for writing");
    std::string head = header.dump();
    out.write("FRPC1\n", 6);
    std::uint32_t len = static_cast<std::uint32_t>(head.size());
    out.write(reinterpret_cast<const char*>(&len), 4);
    out.write(head.data(), static_cast<std::streamsize>(head.size()));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw std::runtime_error("cache: write failed for " + path);
}

LevelConfiguration load_configuration(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cache: cannot open " + path);
    char magic[6];
    in.read(magic, 6);
    if (!in || std::string(magic, 6) != "FRPC1\n")
        throw std::runtime_error("cache: bad magic in " + path);
    std::uint32_t len = 0;
    in.read(reinterpret_cast<char*>(&len), 4);
    std::string head(len, '\0');
    in.read(head.data(), len);
    if (!in) throw std::runtime_error("cache: truncated header in " + path);
    nlohmann::json header = nlohmann::json::parse(head);

    ProcessParams params;
    params.N = header.at("N").get<std::uint32_t>();
    params.d = header.at("d").get<std::uint32_t>();
    params.p = header.at("p").get<double>();
    params.seed = header.at("seed").get<std::uint64_t>();
    params.validate();
    int level = header.at("level").get<int>();
    std::string format = header.at("format").get<std::string>();

    std::string payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::size_t pos = 0;
    std::vector<std::uint64_t> alive;
    if (format == "grid-rle") {
        std::uint64_t idx = 0;
        bool current = false;
        while (pos < payload.size()) {
            std::uint64_t run = get_varint(payload, pos);
            if (current)
                for (std::uint64_t i = 0; i < run; ++i) alive.push_back(idx + i);
            idx += run;
            current = !current;
        }
    } else if (format == "sparse-delta") {
        std::uint64_t count = get_varint(payload, pos);
        alive.reserve(count);
        std::uint64_t prev = 0;
        for (std::uint64_t i = 0; i < count; ++i) {
            prev += get_varint(payload, pos);
            alive.push_back(prev);
        }
    } else {
        throw std::runtime_error("cache: unknown format " + format);
    }

    auto config = LevelConfiguration::from_packed(params, level, std::move(alive));
    if (header.contains("z") && config.z() != header.at("z").get<std::uint64_t>())
        throw std::runtime_error("cache: cell count mismatch in " + path);
    return config;
}

}  // namespace fracperc
