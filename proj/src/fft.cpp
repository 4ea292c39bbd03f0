#include "mihd/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace mihd::fft {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex planner_mutex;
std::map<int, PlanPair>& plan_cache() {
    static std::map<int, PlanPair> cache;
    return cache;
}

// Plans are created once per size with FFTW_ESTIMATE (deterministic plan
// selection) and FFTW_UNALIGNED so they can run on any caller buffer via
// the new-array execute interface.
const PlanPair& plans_for(int n) {
    std::lock_guard<std::mutex> lock(planner_mutex);
    auto& cache = plan_cache();
    auto it = cache.find(n);
    if (it != cache.end())
        return it->second;

    const std::size_t count = static_cast<std::size_t>(n) * n * n;
    std::vector<std::complex<double>> scratch(count);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    PlanPair p;
    p.fwd = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_FORWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_3d(n, n, n, buf, buf, FFTW_BACKWARD,
                             FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.emplace(n, p).first->second;
}

} // namespace

void forward(int n, std::complex<double>* data) {
    const PlanPair& p = plans_for(n);
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p.fwd, buf, buf);
}

void backward(int n, std::complex<double>* data) {
    const PlanPair& p = plans_for(n);
    auto* buf = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p.bwd, buf, buf);
}

} // namespace mihd::fft
