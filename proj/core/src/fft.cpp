#include "displab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace displab::fft {
namespace {

// FFTW's planner is not reentrant; fftw_execute_dft on a finished plan is.
std::mutex planner_mutex;

fftw_plan plan_for(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard lock(planner_mutex);
    auto it = cache.find({n, sign});
    if (it != cache.end()) return it->second;
    cvec scratch(n);
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(std::make_pair(n, sign), plan);
    return plan;
}

void run(cvec& data, int sign) {
    if (data.empty()) return;
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan_for(data.size(), sign), p, p);
}

}  // namespace

void forward(cvec& data) { run(data, FFTW_FORWARD); }
void backward(cvec& data) { run(data, FFTW_BACKWARD); }

}  // namespace displab::fft
