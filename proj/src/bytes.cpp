#include "camr/bytes.hpp"

#include <stdexcept>

#if defined(__x86_64__) || defined(__i386__)
#define CAMR_X86 1
#include <immintrin.h>
#else
#define CAMR_X86 0
#endif

#if defined(__aarch64__) || defined(__ARM_NEON)
#define CAMR_NEON 1
#include <arm_neon.h>
#else
#define CAMR_NEON 0
#endif

namespace camr {

void xor_scalar(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] ^= src[i];
}

#if CAMR_X86
__attribute__((target("avx2"))) static void xor_avx2(std::uint8_t* dst,
                                                     const std::uint8_t* src,
                                                     std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_xor_si256(a, b));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}
#endif

#if CAMR_NEON
static void xor_neon(std::uint8_t* dst, const std::uint8_t* src, std::size_t n) {
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    uint8x16_t a = vld1q_u8(dst + i);
    uint8x16_t b = vld1q_u8(src + i);
    vst1q_u8(dst + i, veorq_u8(a, b));
  }
  for (; i < n; ++i) dst[i] ^= src[i];
}
#endif

static std::vector<XorKernel> detect_kernels() {
  std::vector<XorKernel> ks;
  ks.push_back({"scalar", &xor_scalar});
#if CAMR_X86
  if (__builtin_cpu_supports("avx2")) ks.push_back({"avx2", &xor_avx2});
#endif
#if CAMR_NEON
  ks.push_back({"neon", &xor_neon});
#endif
  return ks;
}

const std::vector<XorKernel>& available_xor_kernels() {
  static const std::vector<XorKernel> ks = detect_kernels();
  return ks;
}

const XorKernel& active_xor_kernel() { return available_xor_kernels().back(); }

void xor_inplace(Bytes& dst, const Bytes& src) {
  if (dst.size() != src.size())
    throw std::invalid_argument("xor_inplace: size mismatch");
  if (!dst.empty()) active_xor_kernel().fn(dst.data(), src.data(), dst.size());
}

void add_be_inplace(Bytes& acc, const Bytes& addend) {
  if (acc.size() != addend.size())
    throw std::invalid_argument("add_be_inplace: width mismatch");
  unsigned carry = 0;
  for (std::size_t i = acc.size(); i-- > 0;) {
    unsigned s = unsigned(acc[i]) + unsigned(addend[i]) + carry;
    acc[i] = std::uint8_t(s & 0xff);
    carry = s >> 8;
  }
  // final carry drops: arithmetic is mod 2^(8*width)
}

void max_be_inplace(Bytes& acc, const Bytes& other) {
  if (acc.size() != other.size())
    throw std::invalid_argument("max_be_inplace: width mismatch");
  if (acc < other) acc = other;
}

Bytes encode_be(std::uint64_t value, int width) {
  if (width < 1) throw std::invalid_argument("encode_be: width must be >= 1");
  Bytes b(std::size_t(width), 0);
  std::uint64_t v = value;
  for (std::size_t i = b.size(); i-- > 0 && v != 0;) {
    b[i] = std::uint8_t(v & 0xff);
    v >>= 8;
  }
  if (v != 0)
    throw std::invalid_argument("encode_be: value does not fit in " +
                                std::to_string(width) + " bytes");
  return b;
}

std::uint64_t decode_be(const Bytes& bytes) {
  std::uint64_t v = 0;
  std::size_t start = bytes.size() > 8 ? bytes.size() - 8 : 0;
  for (std::size_t i = 0; i < start; ++i)
    if (bytes[i] != 0)
      throw std::invalid_argument("decode_be: value exceeds 64 bits");
  for (std::size_t i = start; i < bytes.size(); ++i) v = (v << 8) | bytes[i];
  return v;
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string to_hex(const Bytes& b) {
  static const char* digits = "0123456789abcdef";
  std::string s;
  s.reserve(b.size() * 2);
  for (std::uint8_t v : b) {
    s.push_back(digits[v >> 4]);
    s.push_back(digits[v & 0xf]);
  }
  return s;
}

}  // namespace camr
