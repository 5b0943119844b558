#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "camr/bytes.hpp"
#include "camr/rng.hpp"

using namespace camr;

namespace {

Bytes random_bytes(SplitMix64& rng, std::size_t n) {
  Bytes b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = std::uint8_t(rng.next());
  return b;
}

// reference mod-2^(8w) addition computed through plain integers
std::uint64_t truncate(std::uint64_t v, int width) {
  return width >= 8 ? v : v & ((std::uint64_t(1) << (8 * width)) - 1);
}

}  // namespace

TEST_CASE("xor kernel list starts with scalar") {
  const auto& kernels = available_xor_kernels();
  REQUIRE(!kernels.empty());
  CHECK(std::string(kernels.front().name) == "scalar");
  CHECK(std::string(active_xor_kernel().name) ==
        std::string(kernels.back().name));
}

TEST_CASE("every xor kernel matches the scalar reference") {
  const std::size_t sizes[] = {0,  1,  2,  3,   15,  16,   17,   31,  32,
                               33, 63, 64, 65,  100, 200,  4096, 4097, 5000};
  SplitMix64 rng{2024};
  for (const XorKernel& kernel : available_xor_kernels()) {
    for (std::size_t n : sizes) {
      Bytes dst = random_bytes(rng, n);
      Bytes src = random_bytes(rng, n);
      Bytes want = dst;
      xor_scalar(want.data(), src.data(), n);
      Bytes got = dst;
      kernel.fn(got.data(), src.data(), n);
      REQUIRE_MESSAGE(got == want, "kernel ", kernel.name, " size ", n);
    }
  }
}

TEST_CASE("xor_inplace is a self-inverse") {
  SplitMix64 rng{7};
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = std::size_t(uniform_below(rng, 512));
    Bytes a = random_bytes(rng, n);
    Bytes b = random_bytes(rng, n);
    Bytes c = a;
    xor_inplace(c, b);
    xor_inplace(c, b);
    CHECK(c == a);
  }
  Bytes a{1, 2};
  Bytes b{1};
  CHECK_THROWS_AS(xor_inplace(a, b), std::invalid_argument);
}

TEST_CASE("big-endian addition carries and wraps") {
  Bytes acc{0x00, 0xff};
  add_be_inplace(acc, Bytes{0x00, 0x01});
  CHECK(acc == Bytes{0x01, 0x00});

  acc = Bytes{0xff, 0xff};
  add_be_inplace(acc, Bytes{0x00, 0x01});
  CHECK(acc == Bytes{0x00, 0x00});

  SplitMix64 rng{11};
  for (int width : {1, 2, 3, 7, 8}) {
    for (int i = 0; i < 200; ++i) {
      const std::uint64_t a = truncate(rng.next(), width);
      const std::uint64_t b = truncate(rng.next(), width);
      Bytes bytes = encode_be(a, width);
      add_be_inplace(bytes, encode_be(b, width));
      const std::uint64_t want =
          width >= 8 ? a + b : truncate(a + b, width);
      CHECK(decode_be(bytes) == want);
    }
  }
  Bytes three(3, 0);
  Bytes two(2, 0);
  CHECK_THROWS_AS(add_be_inplace(three, two), std::invalid_argument);
}

TEST_CASE("big-endian max matches integer comparison") {
  SplitMix64 rng{13};
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t a = truncate(rng.next(), 3);
    const std::uint64_t b = truncate(rng.next(), 3);
    Bytes bytes = encode_be(a, 3);
    max_be_inplace(bytes, encode_be(b, 3));
    CHECK(decode_be(bytes) == (a > b ? a : b));
  }
}

TEST_CASE("encode_be and decode_be round-trip and guard their ranges") {
  CHECK(encode_be(0x0102, 2) == Bytes{0x01, 0x02});
  CHECK(decode_be(Bytes{0x01, 0x02}) == 0x0102);
  for (std::uint64_t v : {std::uint64_t(0), std::uint64_t(255),
                          std::uint64_t(1) << 40, ~std::uint64_t(0)})
    CHECK(decode_be(encode_be(v, 8)) == v);

  CHECK_THROWS_AS(encode_be(256, 1), std::invalid_argument);
  CHECK_THROWS_AS(encode_be(0x10000, 2), std::invalid_argument);
  CHECK(encode_be(255, 1) == Bytes{0xff});

  // wider than 8 bytes decodes fine while the high bytes stay zero
  Bytes wide(10, 0);
  wide[9] = 7;
  CHECK(decode_be(wide) == 7);
  wide[0] = 1;
  CHECK_THROWS_AS(decode_be(wide), std::invalid_argument);
}

TEST_CASE("fnv1a64 matches the published test vectors") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("to_hex renders bytes lowercase zero-padded") {
  CHECK(to_hex(Bytes{}) == "");
  CHECK(to_hex(Bytes{0x00, 0xff, 0x1a}) == "00ff1a");
}
