#include "hamsim/codes.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace hamsim {

bool CodeSpec::is_parity_position(int pos) {
    return pos > 0 && (pos & (pos - 1)) == 0;
}

std::uint32_t CodeSpec::syndrome(std::uint32_t word) const {
    std::uint32_t s = 0;
    while (word != 0) {
        int i = std::countr_zero(word);
        s ^= static_cast<std::uint32_t>(i + 1);
        word &= word - 1;
    }
    return s;
}

CodeSpec make_code(int r) {
    if (r < 2) {
        throw std::invalid_argument("make_code: r must be >= 2, got " + std::to_string(r));
    }
    if (r > 30) {
        throw std::invalid_argument("make_code: r too large for 32-bit codewords");
    }
    CodeSpec spec;
    spec.r = r;
    spec.n = (1 << r) - 1;
    spec.k = spec.n - r;
    spec.columns.resize(static_cast<std::size_t>(spec.n));
    for (int p = 1; p <= spec.n; ++p) {
        spec.columns[static_cast<std::size_t>(p - 1)] = static_cast<std::uint32_t>(p);
    }
    return spec;
}

static void check_width(std::uint32_t word, int bits, const char* what) {
    if (bits < 32 && (word >> bits) != 0) {
        throw std::invalid_argument(std::string(what) + ": word wider than " + std::to_string(bits) + " bits");
    }
}

std::uint32_t encode(const CodeSpec& spec, std::uint32_t data) {
    check_width(data, spec.k, "encode");
    std::uint32_t word = 0;
    int di = 0;
    for (int p = 1; p <= spec.n; ++p) {
        if (CodeSpec::is_parity_position(p)) continue;
        if ((data >> di) & 1u) word |= (1u << (p - 1));
        ++di;
    }
    // syndrome of the data bits tells us exactly which parity bits to set:
    // position 2^j contributes 2^j to the syndrome and nothing else.
    std::uint32_t s = spec.syndrome(word);
    for (int j = 0; (1 << j) <= spec.n; ++j) {
        if ((s >> j) & 1u) word |= (1u << ((1 << j) - 1));
    }
    return word;
}

std::uint32_t extract_data(const CodeSpec& spec, std::uint32_t codeword) {
    std::uint32_t data = 0;
    int di = 0;
    for (int p = 1; p <= spec.n; ++p) {
        if (CodeSpec::is_parity_position(p)) continue;
        if ((codeword >> (p - 1)) & 1u) data |= (1u << di);
        ++di;
    }
    return data;
}

DecodeReport decode(const CodeSpec& spec, std::uint32_t received) {
    check_width(received, spec.n, "decode");
    DecodeReport rep;
    std::uint32_t s = spec.syndrome(received);
    if (s == 0) {
        rep.outcome = DecodeOutcome::NoError;
        rep.data = extract_data(spec, received);
        return rep;
    }
    // s is always a valid position for a perfect code (1..n fits in r bits)
    rep.outcome = DecodeOutcome::CorrectedSingle;
    rep.corrected_position = static_cast<int>(s);
    rep.data = extract_data(spec, received ^ (1u << (s - 1)));
    return rep;
}

std::uint32_t encode_extended(const CodeSpec& spec, std::uint32_t data) {
    std::uint32_t inner = encode(spec, data);
    std::uint32_t parity = static_cast<std::uint32_t>(std::popcount(inner) & 1);
    return inner | (parity << spec.n);
}

DecodeReport decode_extended(const CodeSpec& spec, std::uint32_t received) {
    check_width(received, spec.n + 1, "decode_extended");
    DecodeReport rep;
    std::uint32_t inner = received & ((1u << spec.n) - 1u);
    std::uint32_t s = spec.syndrome(inner);
    bool overall_odd = (std::popcount(received) & 1) != 0;
    if (overall_odd) {
        // odd weight error: correctable single (possibly in the parity bit)
        rep.outcome = DecodeOutcome::CorrectedSingle;
        if (s == 0) {
            rep.corrected_position = spec.n + 1;
            rep.data = extract_data(spec, inner);
        } else {
            rep.corrected_position = static_cast<int>(s);
            rep.data = extract_data(spec, inner ^ (1u << (s - 1)));
        }
        return rep;
    }
    if (s == 0) {
        rep.outcome = DecodeOutcome::NoError;
        rep.data = extract_data(spec, inner);
        return rep;
    }
    rep.outcome = DecodeOutcome::DetectedUncorrectable;
    rep.data = extract_data(spec, inner);
    return rep;
}

}  // namespace hamsim
