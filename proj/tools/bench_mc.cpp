// Times the OpenMP trial loop against the serial reference on the same
// configuration and checks that they produce the identical estimate.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gwnary/mc.hpp"

namespace {

double time_once(const gwnary::McConfig& config, bool parallel, gwnary::McEstimate* estimate) {
    const auto start = std::chrono::steady_clock::now();
    *estimate = parallel ? gwnary::estimate_gamma_nt(config)
                         : gwnary::estimate_gamma_nt_serial(config);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    gwnary::McConfig config{gwnary::OffspringSpec::geometric(0.8), 2, 8, 20000, 42};
    if (argc > 1) config.n_trials = std::atoll(argv[1]);
    if (argc > 2) config.t = std::atoi(argv[2]);
    if (config.n_trials <= 0 || config.t < 0) {
        std::fprintf(stderr, "usage: %s [n_trials] [t] [spec]\n", argv[0]);
        return 2;
    }
    if (argc > 3) {
        try {
            config.spec = gwnary::parse_spec(argv[3]);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "%s\nusage: %s [n_trials] [t] [spec]\n", e.what(), argv[0]);
            return 2;
        }
    }

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("spec %s, N=%d, t=%d, trials %lld, %d thread(s)\n",
                config.spec.to_string().c_str(), config.n, config.t,
                static_cast<long long>(config.n_trials), threads);

    gwnary::McEstimate serial, parallel;
    const double warm = time_once(config, false, &serial);
    std::printf("  warm-up          %8.3fs\n", warm);
    const double t_serial = time_once(config, false, &serial);
    std::printf("  serial reference %8.3fs  p_hat=%.6f\n", t_serial, serial.p_hat);
    const double t_parallel = time_once(config, true, &parallel);
    std::printf("  openmp kernel    %8.3fs  p_hat=%.6f\n", t_parallel, parallel.p_hat);

    if (serial.p_hat != parallel.p_hat || serial.n_trials != parallel.n_trials) {
        std::printf("MISMATCH between serial and parallel estimates\n");
        return 1;
    }
    std::printf("  identical estimates, speedup %.2fx\n", t_serial / t_parallel);
    return 0;
}
