// Compares the serial reference chamber enumeration with the OpenMP kernel
// on a larger random arrangement and checks they produce identical output.

#include <omp.h>

#include <chrono>
#include <iostream>
#include <random>

#include "koszul/polarized.hpp"

using namespace koszul;

namespace {

PolarizedArrangement random_instance(int n, int k, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> coef(-3, 3);
    while (true) {
        RationalMatrix rows(k, n);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < n; ++c) rows.at(r, c) = rat_of(coef(rng));
        PolarizedArrangement pa;
        pa.n = n;
        pa.v = Subspace::from_span(rows);
        if (static_cast<int>(pa.v.dim()) != k) continue;
        pa.eta.resize(n);
        pa.xi.resize(n);
        for (int i = 0; i < n; ++i) {
            pa.eta[i] = rat_of(coef(rng), 2);
            pa.xi[i] = rat_of(coef(rng));
        }
        if (validate_arrangement(pa).pass) return pa;
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 12;
    int k = argc > 2 ? std::atoi(argv[2]) : 5;
    int threads = argc > 3 ? std::atoi(argv[3]) : omp_get_max_threads();
    std::cout << "chamber enumeration benchmark: n = " << n << ", k = " << k << ", "
              << (std::size_t{1} << n) << " sign vectors\n";
    PolarizedArrangement pa = random_instance(n, k, 12345);

    auto t0 = std::chrono::steady_clock::now();
    ChamberSet serial = enumerate_chambers_serial(pa);
    double ts = seconds_since(t0);
    std::cout << "serial reference: " << ts << " s, |I| = " << serial.index_set.size() << "\n";

    t0 = std::chrono::steady_clock::now();
    ChamberSet par = enumerate_chambers(pa, threads);
    double tp = seconds_since(t0);
    std::cout << "openmp (" << threads << " threads): " << tp << " s\n";

    bool same = serial.index_set == par.index_set;
    for (std::size_t c = 0; c < serial.chambers.size() && same; ++c)
        same = serial.chambers[c].vertex == par.chambers[c].vertex &&
               serial.chambers[c].basis == par.chambers[c].basis;
    std::cout << "outputs identical: " << (same ? "yes" : "NO") << "\n";
    std::cout << "speedup: " << (tp > 0 ? ts / tp : 0.0) << "x\n";
    return same ? 0 : 1;
}
