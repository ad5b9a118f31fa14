#include <catch_amalgamated.hpp>

#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "fmcw/fft.hpp"

using fmcw::fft::cvec;

namespace {

// quadratic-time reference DFT, the oracle for every fast path
cvec direct_dft(const cvec& x, bool inverse) {
    const std::size_t n = x.size();
    cvec out(n, {0.0, 0.0});
    const double sign = inverse ? +1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t m = 0; m < n; ++m) {
            const double ang = sign * 2.0 * std::numbers::pi *
                               static_cast<double>(k * m % n) / static_cast<double>(n);
            acc += x[m] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = inverse ? acc / static_cast<double>(n) : acc;
    }
    return out;
}

cvec random_signal(std::size_t n, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    cvec x(n);
    for (auto& z : x) z = {u(gen), u(gen)};
    return x;
}

double max_rel_err(const cvec& a, const cvec& b) {
    REQUIRE(a.size() == b.size());
    double scale = 0.0;
    for (const auto& z : b) scale = std::max(scale, std::abs(z));
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]) / scale);
    return worst;
}

}  // namespace

TEST_CASE("forward transform matches the direct DFT") {
    for (std::size_t n : {2u, 8u, 64u, 256u}) {
        const cvec x = random_signal(n, 100 + static_cast<unsigned>(n));
        CHECK(max_rel_err(fmcw::fft::forward(x), direct_dft(x, false)) < 1e-10);
    }
}

TEST_CASE("non-power-of-two lengths match the direct DFT") {
    for (std::size_t n : {3u, 10u, 143u, 500u, 1002u}) {
        const cvec x = random_signal(n, 7 + static_cast<unsigned>(n));
        CHECK(max_rel_err(fmcw::fft::forward(x), direct_dft(x, false)) < 1e-9);
        CHECK(max_rel_err(fmcw::fft::inverse(x), direct_dft(x, true)) < 1e-9);
    }
}

TEST_CASE("inverse(forward(x)) recovers x") {
    for (std::size_t n : {16u, 100u, 731u, 4096u}) {
        const cvec x = random_signal(n, 55 + static_cast<unsigned>(n));
        const cvec y = fmcw::fft::inverse(fmcw::fft::forward(x));
        CHECK(max_rel_err(y, x) < 1e-11);
    }
}

TEST_CASE("Parseval holds") {
    const cvec x = random_signal(777, 3);
    const cvec X = fmcw::fft::forward(x);
    double et = 0.0, ef = 0.0;
    for (const auto& z : x) et += std::norm(z);
    for (const auto& z : X) ef += std::norm(z);
    CHECK(ef / static_cast<double>(x.size()) == Catch::Approx(et).epsilon(1e-10));
}

TEST_CASE("zero-padded forward equals padded direct DFT") {
    const cvec x = random_signal(45, 9);
    cvec padded = x;
    padded.resize(64, {0.0, 0.0});
    CHECK(max_rel_err(fmcw::fft::forward_padded(x, 64), direct_dft(padded, false)) <
          1e-10);
}

TEST_CASE("next_pow2") {
    CHECK(fmcw::fft::next_pow2(1) == 1);
    CHECK(fmcw::fft::next_pow2(2) == 2);
    CHECK(fmcw::fft::next_pow2(3) == 4);
    CHECK(fmcw::fft::next_pow2(4096) == 4096);
    CHECK(fmcw::fft::next_pow2(4097) == 8192);
}
