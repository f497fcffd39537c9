#include "shearlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace shearlab {

namespace {

// FFTW planning is not thread-safe; execution through the new-array
// interface is. Plans are created with FFTW_UNALIGNED so they accept any
// complex<double> buffer.
class PlanCache {
public:
    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<std::complex<double>> dummy(n);
        fftw_plan p = fftw_plan_dft_1d(
            static_cast<int>(n), reinterpret_cast<fftw_complex*>(dummy.data()),
            reinterpret_cast<fftw_complex*>(dummy.data()), sign,
            FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

    ~PlanCache() {
        for (auto& [k, p] : plans_) fftw_destroy_plan(p);
    }

private:
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void execute(std::vector<std::complex<double>>& data, int sign) {
    fftw_plan p = cache().get(data.size(), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(p, buf, buf);
}

}  // namespace

void dft_forward(std::vector<std::complex<double>>& data) {
    execute(data, FFTW_FORWARD);
}

void dft_backward(std::vector<std::complex<double>>& data) {
    execute(data, FFTW_BACKWARD);
}

}  // namespace shearlab
