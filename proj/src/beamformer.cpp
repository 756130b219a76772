// SPDX-License-Identifier: Apache-2.0
//
// rdoa - covariance-fitting direction-of-arrival estimation on HPD geometry
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "rdoa/beamformer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>

#include "rdoa/parallel.hpp"

namespace rdoa
{

namespace
{

constexpr int golden_iterations = 20;

double quad_form(const Eigen::MatrixXcd &m, const Eigen::VectorXcd &a)
{
    const std::complex<double> v = a.dot(m * a);
    // Hermitian quadratic forms are real up to round-off.
    return v.real();
}

// Golden-section minimizer on [lo, hi]; returns the abscissa.
double golden_section(const std::function<double(double)> &f, double lo, double hi, int iters)
{
    constexpr double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i)
    {
        if (f1 <= f2)
        {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
        else
        {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

std::vector<double> grid_points_db(const PowerGrid &grid)
{
    if (grid.points < 2 || !(grid.min_db < grid.max_db))
        throw std::invalid_argument("PowerGrid: need points >= 2 and min_db < max_db");
    std::vector<double> out(static_cast<std::size_t>(grid.points));
    const double step = (grid.max_db - grid.min_db) / static_cast<double>(grid.points - 1);
    for (int i = 0; i < grid.points; ++i)
        out[static_cast<std::size_t>(i)] = grid.min_db + step * i;
    return out;
}

// Grid search in dB plus golden-section refinement around the best cell.
// The refined value never exceeds the best raw grid value.
FitResult minimize_on_grid(const std::function<double(double)> &objective_of_db,
                           const PowerGrid &grid)
{
    const std::vector<double> db = grid_points_db(grid);
    std::size_t best = 0;
    double best_val = objective_of_db(db[0]);
    for (std::size_t i = 1; i < db.size(); ++i)
    {
        const double v = objective_of_db(db[i]);
        if (v < best_val)
        {
            best_val = v;
            best = i;
        }
    }
    FitResult result;
    result.boundary = (best == 0 || best + 1 == db.size());
    const double lo = db[best > 0 ? best - 1 : 0];
    const double hi = db[std::min(best + 1, db.size() - 1)];
    const double refined = golden_section(objective_of_db, lo, hi, golden_iterations);
    const double chosen = (objective_of_db(refined) <= best_val) ? refined : db[best];
    result.power = db_to_linear(chosen);
    return result;
}

} // namespace

std::string beamformer_name(Beamformer b)
{
    switch (b)
    {
    case Beamformer::Cb:
        return "cb";
    case Beamformer::Mv:
        return "mv";
    case Beamformer::Le:
        return "le";
    case Beamformer::Ai:
        return "ai";
    case Beamformer::Kl1:
        return "kl1";
    case Beamformer::Kl2:
        return "kl2";
    case Beamformer::Ld:
        return "ld";
    case Beamformer::Ref38:
        return "ref38";
    }
    return "?";
}

Beamformer beamformer_from_name(const std::string &name)
{
    if (name == "cb")
        return Beamformer::Cb;
    if (name == "mv")
        return Beamformer::Mv;
    if (name == "le")
        return Beamformer::Le;
    if (name == "ai")
        return Beamformer::Ai;
    if (name == "kl1")
        return Beamformer::Kl1;
    if (name == "kl2")
        return Beamformer::Kl2;
    if (name == "ld")
        return Beamformer::Ld;
    if (name == "ref38")
        return Beamformer::Ref38;
    throw std::invalid_argument("unknown beamformer: " + name);
}

double p_cb(const HermitianMatrix &r, const Eigen::VectorXcd &a)
{
    return quad_form(r.matrix(), a);
}

double p_mv(const HpdMatrix &r, const Eigen::VectorXcd &a)
{
    return 1.0 / quad_form(r.inverse().matrix(), a);
}

double p_le(const HpdMatrix &r, const Eigen::VectorXcd &a, double noise_power)
{
    return std::exp(quad_form(r.log().matrix(), a)) - noise_power;
}

double p_kl1(const HermitianMatrix &r, const Eigen::VectorXcd &a, double noise_power)
{
    return p_cb(r, a) - noise_power;
}

double p_kl2(const HpdMatrix &r, const Eigen::VectorXcd &a, double noise_power)
{
    return p_mv(r, a) - noise_power;
}

double p_ld(const HermitianMatrix &r, const Eigen::VectorXcd &a, double noise_power)
{
    const int m = r.dim();
    const Eigen::MatrixXcd loaded =
        r.matrix() + noise_power * Eigen::MatrixXcd::Identity(m, m);
    const HpdMatrix lp{HermitianMatrix(loaded)};
    return 1.0 / quad_form(lp.inverse().matrix(), a) - 2.0 * noise_power;
}

double p_ref38(const HpdMatrix &r, const Eigen::VectorXcd &a)
{
    // lambda_1{R^{-1/2} a a^H R^{-1/2}} = a^H R^{-1} a.
    const double q = quad_form(r.inverse().matrix(), a);
    const double l = std::log(q);
    if (std::abs(l) < 1e-15)
        return std::numeric_limits<double>::infinity();
    return 1.0 / (l * l);
}

// Shared state for affine-invariant fits over many directions. The
// whitened model R^{-1/2}(s a a^H + n I)R^{-1/2} = s w w^H + n R^{-1}
// with w = R^{-1/2} a needs the inverse square root only once per
// covariance; each power hypothesis is a rank-1 update of the cached
// noise term.
class AiFit
{
  public:
    AiFit(const HpdMatrix &r, const PowerGrid &grid, double noise_power)
        : inv_sqrt_(r.inv_sqrt().matrix()), base_(noise_power * r.inverse().matrix()), grid_(grid)
    {
    }

    FitResult fit(const Eigen::VectorXcd &a) const
    {
        const Eigen::VectorXcd w = inv_sqrt_ * a;
        const auto objective = [&](double sigma_db) {
            const double sigma2 = db_to_linear(sigma_db);
            const HermitianMatrix whitened(base_ + sigma2 * (w * w.adjoint()));
            const Eigen::VectorXd lam = eig_hermitian(whitened).first;
            double sum = 0.0;
            for (int i = 0; i < lam.size(); ++i)
            {
                const double l = std::log(lam(i));
                sum += l * l;
            }
            return sum;
        };
        return minimize_on_grid(objective, grid_);
    }

  private:
    Eigen::MatrixXcd inv_sqrt_;
    Eigen::MatrixXcd base_;
    PowerGrid grid_;
};

double p_ai(const HpdMatrix &r, const Eigen::VectorXcd &a, const PowerGrid &grid,
            double noise_power, bool *boundary)
{
    const FitResult fit = AiFit(r, grid, noise_power).fit(a);
    if (boundary != nullptr)
        *boundary = fit.boundary;
    return fit.power;
}

double shrinkage_spectrum(const HpdMatrix &r, const Eigen::VectorXcd &a, EigenvalueMap g,
                          double noise_power)
{
    const Eigen::VectorXd &lam = r.eigenvalues();
    const Eigen::MatrixXcd &u = r.eigenvectors();
    double acc = 0.0;
    for (int m = 0; m < r.dim(); ++m)
    {
        const double weight = std::norm(std::complex<double>(u.col(m).dot(a)));
        double gl = 0.0;
        switch (g)
        {
        case EigenvalueMap::Identity:
            gl = lam(m);
            break;
        case EigenvalueMap::NegReciprocal:
            gl = -1.0 / lam(m);
            break;
        case EigenvalueMap::Log:
            gl = std::log(lam(m));
            break;
        case EigenvalueMap::LdReciprocal:
            gl = -1.0 / (lam(m) + noise_power);
            break;
        }
        acc += weight * gl;
    }
    switch (g)
    {
    case EigenvalueMap::Identity:
        return acc;
    case EigenvalueMap::NegReciprocal:
        return -1.0 / acc;
    case EigenvalueMap::Log:
        return std::exp(acc);
    case EigenvalueMap::LdReciprocal:
        return -1.0 / acc - noise_power;
    }
    return acc;
}

FitResult cf_grid_fit(const HermitianMatrix &r, const Eigen::VectorXcd &a, FitDistance distance,
                      const PowerGrid &grid, double noise_power)
{
    const int m = r.dim();
    const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(m, m);
    const auto model_at = [&](double sigma_db) {
        const double sigma2 = db_to_linear(sigma_db);
        return HermitianMatrix(sigma2 * (a * a.adjoint()) + noise_power * eye);
    };

    std::function<double(double)> objective;
    switch (distance)
    {
    case FitDistance::Euclidean:
        objective = [&](double db) { return dist_euclidean(r, model_at(db)); };
        break;
    case FitDistance::EuclideanInverse:
    {
        auto r_inv = std::make_shared<HermitianMatrix>(HpdMatrix(r).inverse().hermitian());
        objective = [&, r_inv](double db) {
            return dist_euclidean(*r_inv, HpdMatrix(model_at(db)).inverse().hermitian());
        };
        break;
    }
    case FitDistance::AffineInvariant:
    {
        auto rp = std::make_shared<HpdMatrix>(r);
        objective = [&, rp](double db) { return dist_ai(*rp, HpdMatrix(model_at(db))); };
        break;
    }
    case FitDistance::LogEuclidean:
    {
        auto rp = std::make_shared<HpdMatrix>(r);
        objective = [&, rp](double db) { return dist_le(*rp, HpdMatrix(model_at(db))); };
        break;
    }
    case FitDistance::KlSampleModel:
    {
        auto rp = std::make_shared<HpdMatrix>(r);
        objective = [&, rp](double db) { return dist_kl(*rp, HpdMatrix(model_at(db))); };
        break;
    }
    case FitDistance::KlModelSample:
    {
        auto rp = std::make_shared<HpdMatrix>(r);
        objective = [&, rp](double db) { return dist_kl(HpdMatrix(model_at(db)), *rp); };
        break;
    }
    case FitDistance::LogDet:
    {
        auto rp = std::make_shared<HpdMatrix>(r);
        objective = [&, rp](double db) { return dist_ld(*rp, HpdMatrix(model_at(db))); };
        break;
    }
    }
    return minimize_on_grid(objective, grid);
}

std::vector<Direction> make_direction_grid(double start_deg, double stop_deg, double step_deg)
{
    if (!(step_deg > 0.0) || !(stop_deg >= start_deg))
        throw std::invalid_argument("direction grid: need step > 0 and stop >= start");
    std::vector<Direction> out;
    const int n = static_cast<int>(std::floor((stop_deg - start_deg) / step_deg + 1e-9)) + 1;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out.push_back(Direction::from_degrees(start_deg + step_deg * i));
    return out;
}

Spectrum compute_spectrum(const HermitianMatrix &r, const ArrayGeometry &geom,
                          const std::vector<Direction> &grid, Beamformer beamformer,
                          const SpectrumOptions &options)
{
    Spectrum spec;
    spec.grid = grid;
    spec.power.assign(grid.size(), 0.0);
    spec.label = beamformer_name(beamformer);

    // Factor the covariance once; per-direction work reuses it.
    std::shared_ptr<const Eigen::MatrixXcd> log_r, inv_r, inv_loaded;
    std::shared_ptr<const AiFit> ai;
    switch (beamformer)
    {
    case Beamformer::Cb:
    case Beamformer::Kl1:
        break;
    case Beamformer::Mv:
    case Beamformer::Kl2:
    case Beamformer::Ref38:
        inv_r = std::make_shared<Eigen::MatrixXcd>(HpdMatrix(r).inverse().matrix());
        break;
    case Beamformer::Le:
        log_r = std::make_shared<Eigen::MatrixXcd>(HpdMatrix(r).log().matrix());
        break;
    case Beamformer::Ai:
        ai = std::make_shared<AiFit>(HpdMatrix(r), options.ai_grid, options.noise_power);
        break;
    case Beamformer::Ld:
    {
        const int m = r.dim();
        const Eigen::MatrixXcd loaded =
            r.matrix() + options.noise_power * Eigen::MatrixXcd::Identity(m, m);
        inv_loaded =
            std::make_shared<Eigen::MatrixXcd>(HpdMatrix(HermitianMatrix(loaded)).inverse().matrix());
        break;
    }
    }

    parallel_for(grid.size(), [&](std::size_t i) {
        const Eigen::VectorXcd a = geom.steering(grid[i]);
        double v = 0.0;
        switch (beamformer)
        {
        case Beamformer::Cb:
            v = quad_form(r.matrix(), a);
            break;
        case Beamformer::Kl1:
            v = quad_form(r.matrix(), a) - options.noise_power;
            break;
        case Beamformer::Mv:
            v = 1.0 / quad_form(*inv_r, a);
            break;
        case Beamformer::Kl2:
            v = 1.0 / quad_form(*inv_r, a) - options.noise_power;
            break;
        case Beamformer::Ref38:
        {
            const double l = std::log(quad_form(*inv_r, a));
            v = (std::abs(l) < 1e-15) ? std::numeric_limits<double>::infinity()
                                      : 1.0 / (l * l);
            break;
        }
        case Beamformer::Le:
            v = std::exp(quad_form(*log_r, a)) - options.noise_power;
            break;
        case Beamformer::Ai:
            v = ai->fit(a).power;
            break;
        case Beamformer::Ld:
            v = 1.0 / quad_form(*inv_loaded, a) - 2.0 * options.noise_power;
            break;
        }
        spec.power[i] = v;
    });
    return spec;
}

std::vector<Peak> find_peaks(const Spectrum &spectrum, int count)
{
    const std::size_t n = spectrum.power.size();
    std::vector<std::size_t> maxima;
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (spectrum.power[i] > spectrum.power[i - 1] && spectrum.power[i] > spectrum.power[i + 1])
            maxima.push_back(i);
    std::sort(maxima.begin(), maxima.end(), [&](std::size_t a, std::size_t b) {
        return spectrum.power[a] > spectrum.power[b];
    });
    if (count >= 0 && maxima.size() > static_cast<std::size_t>(count))
        maxima.resize(static_cast<std::size_t>(count));

    std::vector<Peak> peaks;
    peaks.reserve(maxima.size());
    for (std::size_t i : maxima)
    {
        const double pl = spectrum.power[i - 1];
        const double pc = spectrum.power[i];
        const double pr = spectrum.power[i + 1];
        const double denom = pl - 2.0 * pc + pr;
        double shift = 0.0;
        if (denom != 0.0)
            shift = 0.5 * (pl - pr) / denom;
        const double step = spectrum.grid[i].radians() - spectrum.grid[i - 1].radians();
        Peak p;
        p.direction = Direction::from_radians(spectrum.grid[i].radians() + shift * step);
        p.power = pc - 0.25 * (pl - pr) * shift;
        peaks.push_back(p);
    }
    return peaks;
}

} // namespace rdoa
