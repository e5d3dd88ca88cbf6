#include "eckhaus/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "eckhaus/errors.hpp"

namespace eckhaus {

RealField::RealField(const Grid& g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.n())
        throw std::invalid_argument("RealField: values length must equal grid.n");
}

SpectralField::SpectralField(const Grid& g, std::vector<cdouble> coeffs) : grid(g), c(std::move(coeffs)) {
    if (static_cast<int>(c.size()) != grid.n())
        throw std::invalid_argument("SpectralField: coefficient count must equal grid.n");
}

namespace {

// FFTW plans per transform size, shared across threads. Plans are created
// with FFTW_ESTIMATE so plan choice (and hence round-off) is reproducible,
// and FFTW_UNALIGNED so they can execute on arbitrary caller buffers.
class PlanCache {
  public:
    struct Plans {
        fftw_plan fwd;
        fftw_plan bwd;
        ~Plans() {
            fftw_destroy_plan(fwd);
            fftw_destroy_plan(bwd);
        }
    };

    static std::shared_ptr<Plans> get(int n) {
        static PlanCache cache;
        std::lock_guard<std::mutex> lock(cache.mu_);
        auto it = cache.plans_.find(n);
        if (it != cache.plans_.end()) return it->second;
        std::vector<cdouble> buf(n);
        auto* p = reinterpret_cast<fftw_complex*>(buf.data());
        auto plans = std::make_shared<Plans>();
        plans->fwd = fftw_plan_dft_1d(n, p, p, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans->bwd = fftw_plan_dft_1d(n, p, p, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
        cache.plans_.emplace(n, plans);
        return plans;
    }

  private:
    std::mutex mu_;
    std::map<int, std::shared_ptr<Plans>> plans_;
};

void execute(fftw_plan plan, const std::vector<cdouble>& in, std::vector<cdouble>& out) {
    out = in;  // fftw_execute_dft is in-place safe and thread-safe
    auto* p = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, p, p);
}

}  // namespace

std::vector<cdouble> forward_transform(const Grid& g, const std::vector<cdouble>& values) {
    auto plans = PlanCache::get(g.n());
    std::vector<cdouble> out;
    execute(plans->fwd, values, out);
    const double scale = g.dx() / (2.0 * std::numbers::pi);
    for (auto& z : out) z *= scale;
    return out;
}

std::vector<cdouble> inverse_transform(const Grid& g, const std::vector<cdouble>& coeffs) {
    auto plans = PlanCache::get(g.n());
    std::vector<cdouble> out;
    execute(plans->bwd, coeffs, out);
    const double scale = g.dk();  // (1/n) * 2pi/dx = dk
    for (auto& z : out) z *= scale;
    return out;
}

SpectralField to_spectral(const RealField& u) {
    std::vector<cdouble> in(u.values.begin(), u.values.end());
    return SpectralField(u.grid, forward_transform(u.grid, in));
}

bool is_hermitian(const SpectralField& f, double rel_tol) {
    const int n = f.grid.n();
    double scale = 0.0;
    for (const auto& z : f.c) scale = std::max(scale, std::abs(z));
    if (scale == 0.0) return true;
    for (int j = 1; j < n; ++j) {
        // partner of signed index s is -s; Nyquist (j = n/2) pairs with itself
        const int jc = (n - j) % n;
        if (std::abs(f.c[j] - std::conj(f.c[jc])) > rel_tol * scale) return false;
    }
    if (std::abs(std::imag(f.c[0])) > rel_tol * scale) return false;
    return true;
}

RealField from_spectral(const SpectralField& f) {
    if (!is_hermitian(f))
        throw SymmetryViolation("from_spectral: coefficients are not Hermitian");
    auto vals = inverse_transform(f.grid, f.c);
    std::vector<double> out(f.grid.n());
    for (int i = 0; i < f.grid.n(); ++i) out[i] = std::real(vals[i]);
    return RealField(f.grid, std::move(out));
}

double spectral_l1(const SpectralField& f) {
    double s = 0.0;
    for (const auto& z : f.c) s += std::abs(z);
    return f.grid.dk() * s;
}

double spectral_linf(const SpectralField& f) {
    double m = 0.0;
    for (const auto& z : f.c) m = std::max(m, std::abs(z));
    return m;
}

double spectral_l1(const SpectralPair& f) {
    double s = 0.0;
    for (int j = 0; j < f.grid().n(); ++j)
        s += std::sqrt(std::norm(f.vr.c[j]) + std::norm(f.vi.c[j]));
    return f.grid().dk() * s;
}

double spectral_linf(const SpectralPair& f) {
    double m = 0.0;
    for (int j = 0; j < f.grid().n(); ++j)
        m = std::max(m, std::sqrt(std::norm(f.vr.c[j]) + std::norm(f.vi.c[j])));
    return m;
}

SpectralField derivative(const SpectralField& f, int order) {
    SpectralField out = f;
    const int n = f.grid.n();
    for (int j = 0; j < n; ++j) {
        const cdouble ik(0.0, f.grid.wavenumber(j));
        out.c[j] *= std::pow(ik, order);
    }
    if (order % 2 != 0) out.c[n / 2] = 0.0;
    return out;
}

void dealias_half(std::vector<cdouble>& coeffs) {
    const int n = static_cast<int>(coeffs.size());
    for (int j = 0; j < n; ++j) {
        const int s = j < n / 2 ? j : j - n;
        if (std::abs(s) > n / 4) coeffs[j] = 0.0;
    }
}

void dealias_half(SpectralField& f) { dealias_half(f.c); }

}  // namespace eckhaus
