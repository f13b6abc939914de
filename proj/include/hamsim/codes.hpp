#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace hamsim {

// Hamming code Ham(2^r-1, 2^r-r-1) with the classic positional parity-check
// matrix: column j (1-based position) is the r-bit binary representation of j.
// Codewords are plain bit vectors packed LSB-first: bit i of the word holds
// code position i+1.
struct CodeSpec {
    int r = 0;
    int n = 0;
    int k = 0;
    // parity_check column for position p (1..n) is simply p; kept explicit so
    // tests can check the no-zero/no-duplicate column invariants directly.
    std::vector<std::uint32_t> columns;

    static bool is_parity_position(int pos);  // 1-based; true iff power of two

    // Syndrome of an n-bit word: XOR of the positions of all set bits.
    std::uint32_t syndrome(std::uint32_t word) const;
};

enum class DecodeOutcome { NoError, CorrectedSingle, DetectedUncorrectable };

struct DecodeReport {
    DecodeOutcome outcome = DecodeOutcome::NoError;
    std::optional<int> corrected_position;  // 1-based, set iff CorrectedSingle
    std::uint32_t data = 0;                 // k-bit word
};

// r >= 2 required; r in {3,4,5} are the instances used by the built-in layouts.
CodeSpec make_code(int r);

// Places the k data bits into the non-power-of-two positions in ascending
// order and solves the parity positions so the syndrome is zero.
std::uint32_t encode(const CodeSpec& spec, std::uint32_t data);

// Plain SEC decode: zero syndrome -> NoError; otherwise the syndrome names a
// position, which is flipped (a multi-bit error miscorrects silently).
DecodeReport decode(const CodeSpec& spec, std::uint32_t received);

// Extended code: one overall parity bit appended at position n+1, giving
// SECDED behaviour. Used only by the physical-decoder diagnostic.
std::uint32_t encode_extended(const CodeSpec& spec, std::uint32_t data);
DecodeReport decode_extended(const CodeSpec& spec, std::uint32_t received);

// Data bits of a codeword (non-parity positions, ascending).
std::uint32_t extract_data(const CodeSpec& spec, std::uint32_t codeword);

}  // namespace hamsim
