#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <random>
#include <string_view>
#include <vector>

#include "apchemo/simd/kernels.hpp"

using namespace apchemo::simd;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

const std::size_t sizes[] = {1, 2, 3, 4, 5, 7, 8, 13, 16, 31, 64, 257};

}  // namespace

TEST_CASE("dispatch honours the scalar override") {
  const char* env = std::getenv("APCHEMO_SIMD");
  if (env != nullptr && std::string_view(env) == "scalar") {
    CHECK(&active_kernels() == &scalar_kernels());
  } else if (avx2_kernels() != nullptr) {
    CHECK(&active_kernels() == avx2_kernels());
  }
}

TEST_CASE("AVX2 kernels agree with the scalar reference bit for bit") {
  const KernelTable* fast = avx2_kernels();
  if (fast == nullptr) {
    MESSAGE("AVX2 not available; nothing to compare");
    return;
  }
  const KernelTable& ref = scalar_kernels();
  std::mt19937_64 rng(12345);

  for (std::size_t n : sizes) {
    CAPTURE(n);
    SUBCASE("transport_row") {
      const auto r = random_vector(rng, n + 4, 0.0, 2.0);
      const auto j = random_vector(rng, n + 4, -1.0, 1.0);
      for (Limiter lim : {Limiter::none, Limiter::minmod, Limiter::lax_wendroff}) {
        for (double nu : {0.0, 0.31, 0.999}) {
          std::vector<double> ra(n), ja(n), rb(n), jb(n);
          ref.transport_row(r.data(), j.data(), ra.data(), ja.data(), n, nu, lim);
          fast->transport_row(r.data(), j.data(), rb.data(), jb.data(), n, nu, lim);
          CHECK(bitwise_equal(ra, rb));
          CHECK(bitwise_equal(ja, jb));
        }
      }
    }
    SUBCASE("implicit_even and implicit_odd") {
      const auto r = random_vector(rng, n, 0.0, 2.0);
      const auto g = random_vector(rng, n, 0.1, 1.0);
      const auto rho = random_vector(rng, n, 0.0, 5.0);
      const auto loss = random_vector(rng, n, 1.0, 3.0);
      const auto rpad = random_vector(rng, n + 2, 0.0, 2.0);
      std::vector<double> a(n), b(n);
      ref.implicit_even(r.data(), g.data(), rho.data(), loss.data(), a.data(), n, 1e-4, 3e-3);
      fast->implicit_even(r.data(), g.data(), rho.data(), loss.data(), b.data(), n, 1e-4, 3e-3);
      CHECK(bitwise_equal(a, b));
      ref.implicit_odd(r.data(), g.data(), rho.data(), loss.data(), rpad.data(), a.data(), n, 1e-4, 3e-3, -7.5);
      fast->implicit_odd(r.data(), g.data(), rho.data(), loss.data(), rpad.data(), b.data(), n, 1e-4, 3e-3, -7.5);
      CHECK(bitwise_equal(a, b));
    }
    SUBCASE("exact_even and exact_odd") {
      const auto r = random_vector(rng, n, 0.0, 2.0);
      const auto g = random_vector(rng, n, 0.1, 1.0);
      const auto rho = random_vector(rng, n, 0.0, 5.0);
      const auto loss = random_vector(rng, n, 1.0, 3.0);
      const auto lam = random_vector(rng, n, 0.0, 1.0);
      std::vector<double> ra(n), ea(n), rb(n), eb(n);
      ref.exact_even(r.data(), g.data(), rho.data(), loss.data(), lam.data(), ra.data(), ea.data(), n);
      fast->exact_even(r.data(), g.data(), rho.data(), loss.data(), lam.data(), rb.data(), eb.data(), n);
      CHECK(bitwise_equal(ra, rb));
      CHECK(bitwise_equal(ea, eb));

      const auto j = random_vector(rng, n, -1.0, 1.0);
      const auto rpad = random_vector(rng, n + 2, 0.0, 2.0);
      const auto epad = random_vector(rng, n + 2, 0.0, 2.0);
      const auto wp = random_vector(rng, n, 0.0, 1e-3);
      const auto wm = random_vector(rng, n, 0.0, 1e-3);
      const auto w0 = random_vector(rng, n, 1e-3, 2e-3);
      std::vector<double> a(n), b(n);
      ref.exact_odd(j.data(), g.data(), rho.data(), loss.data(), lam.data(), rpad.data(), epad.data(),
                    wp.data(), wm.data(), w0.data(), a.data(), n, -3.25);
      fast->exact_odd(j.data(), g.data(), rho.data(), loss.data(), lam.data(), rpad.data(), epad.data(),
                      wp.data(), wm.data(), w0.data(), b.data(), n, -3.25);
      CHECK(bitwise_equal(a, b));
    }
    SUBCASE("axpy") {
      const auto x = random_vector(rng, n, -1.0, 1.0);
      auto a = random_vector(rng, n, -1.0, 1.0);
      auto b = a;
      ref.axpy(a.data(), x.data(), n, 0.37);
      fast->axpy(b.data(), x.data(), n, 0.37);
      CHECK(bitwise_equal(a, b));
    }
    SUBCASE("polar_row") {
      const auto p = random_vector(rng, n + 2, 0.0, 2.0);
      const auto next = random_vector(rng, n, 0.0, 2.0);
      const auto inv_r = random_vector(rng, n, 1.0, 50.0);
      for (bool outgoing : {false, true}) {
        for (double beta_hi : {0.0, 0.013}) {
          std::vector<double> a(n), b(n);
          ref.polar_row(p.data(), next.data(), inv_r.data(), a.data(), n, 0.21, outgoing, 0.007, beta_hi);
          fast->polar_row(p.data(), next.data(), inv_r.data(), b.data(), n, 0.21, outgoing, 0.007, beta_hi);
          CHECK(bitwise_equal(a, b));
        }
      }
    }
  }
}
