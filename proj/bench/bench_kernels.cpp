// Serial reference kernels against their OpenMP counterparts. Usage:
//   bench_kernels [dimension] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>

#include "wormhole/kernels.hpp"
#include "wormhole/marking.hpp"

using namespace wormhole;

namespace {

double best_of(int repeats, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void report(const std::string& name, double serial_ms, double parallel_ms) {
    std::cout << std::left << std::setw(28) << name << std::right << std::fixed << std::setprecision(3)
              << std::setw(12) << serial_ms << std::setw(12) << parallel_ms << std::setw(9)
              << std::setprecision(2) << serial_ms / parallel_ms << "x\n";
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
    const int repeats = argc > 2 ? std::atoi(argv[2]) : 5;

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix a(n, n);
    for (double& x : a.data()) x = u(rng);
    std::vector<double> x(n), y(n);
    for (double& v : x) v = u(rng);
    std::vector<kernels::Complex> z(n), w(n);
    for (auto& v : z) v = {u(rng), u(rng)};

    std::cout << "threads=" << omp_get_max_threads() << " dimension=" << n << " repeats=" << repeats << "\n";
    std::cout << std::left << std::setw(28) << "kernel" << std::right << std::setw(12) << "serial ms"
              << std::setw(12) << "omp ms" << std::setw(10) << "speedup" << "\n";

    report("matvec (real)", best_of(repeats, [&] { kernels::matvec_serial(a, x, y); }),
           best_of(repeats, [&] { kernels::matvec(a, x, y); }));
    report("matvec (complex)", best_of(repeats, [&] { kernels::matvec_serial(a, z, w); }),
           best_of(repeats, [&] { kernels::matvec(a, z, w); }));

    const std::size_t m = std::min<std::size_t>(n, 400);
    Matrix b(m, m), c(m, m);
    for (double& v : b.data()) v = u(rng);
    for (double& v : c.data()) v = u(rng);
    report("multiply " + std::to_string(m), best_of(repeats, [&] { (void)kernels::multiply_serial(b, c); }),
           best_of(repeats, [&] { (void)kernels::multiply(b, c); }));

    const std::vector<Int> alphas{2};
    const auto g = OrbitGraph::build(703, alphas);
    const FactorPair f{19, 37, 703};
    const std::uint64_t trials = 20'000;
    report("monte carlo 703, k=100", best_of(repeats, [&] {
               (void)marking::estimate_success_prob_serial(g, f, 100, trials, marking::Mode::Strict, 1);
           }),
           best_of(repeats, [&] {
               (void)marking::estimate_success_prob(g, f, 100, trials, marking::Mode::Strict, 1);
           }));
    return 0;
}
