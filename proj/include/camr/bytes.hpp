#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace camr {

using Bytes = std::vector<std::uint8_t>;

// ---------------------------------------------------------------------------
// XOR kernels.
//
// Every coded transmission and every decode in the shuffle engine is a
// byte-buffer XOR, so the kernel comes in a scalar reference flavor plus
// SIMD variants. The variant is picked once at startup from what the CPU
// actually supports; all variants must be bit-identical to the scalar one.
// ---------------------------------------------------------------------------

using XorFn = void (*)(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);

// reference implementation; the ground truth the SIMD variants are tested against
void xor_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n);

struct XorKernel {
  const char* name;  // "scalar", "avx2", "neon"
  XorFn fn;
};

// kernels usable on the running CPU, scalar always first
const std::vector<XorKernel>& available_xor_kernels();

// the variant the engine dispatches to (widest supported)
const XorKernel& active_xor_kernel();

// dst ^= src; sizes must match
void xor_inplace(Bytes& dst, const Bytes& src);

// ---------------------------------------------------------------------------
// Fixed-width big-endian arithmetic for aggregate values.
// ---------------------------------------------------------------------------

// acc = (acc + addend) mod 2^(8*width); widths must match
void add_be_inplace(Bytes& acc, const Bytes& addend);

// acc = max(acc, other) in numeric (= lexicographic big-endian) order
void max_be_inplace(Bytes& acc, const Bytes& other);

// big-endian encoding of value into exactly `width` bytes; throws if it does not fit
Bytes encode_be(std::uint64_t value, int width);

// inverse of encode_be; throws if the value exceeds 64 bits
std::uint64_t decode_be(const Bytes& bytes);

// ---------------------------------------------------------------------------
// Misc byte utilities.
// ---------------------------------------------------------------------------

std::uint64_t fnv1a64(std::string_view s);

std::string to_hex(const Bytes& b);

}  // namespace camr
