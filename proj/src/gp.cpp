#include "autoplan/gp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "autoplan/errors.hpp"

namespace autoplan {

namespace {

double matern52(double r, double length_scale) {
    const double a = std::sqrt(5.0) * r / length_scale;
    return (1.0 + a + a * a / 3.0) * std::exp(-a);
}

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double norm_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

GpModel GpModel::fit(const std::vector<GpObservation>& observations,
                     double length_scale, double jitter) {
    if (observations.empty()) {
        throw std::invalid_argument("GpModel::fit: needs at least one observation");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(observations.size());
    const Eigen::Index d = static_cast<Eigen::Index>(observations.front().x.size());

    GpModel model;
    model.length_scale_ = length_scale;
    model.inputs_.resize(n, d);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const GpObservation& o = observations[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < d; ++j) {
            model.inputs_(i, j) = o.x[static_cast<std::size_t>(j)];
        }
        y(i) = o.t;
    }

    model.mean_y_ = y.mean();
    const double var =
        n > 1 ? (y.array() - model.mean_y_).square().sum() / static_cast<double>(n - 1)
              : 0.0;
    model.std_y_ = var > 1e-24 ? std::sqrt(var) : 1.0;
    model.z_ = (y.array() - model.mean_y_) / model.std_y_;

    Eigen::MatrixXd kernel(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        kernel(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double r = (model.inputs_.row(i) - model.inputs_.row(j)).norm();
            kernel(i, j) = kernel(j, i) = matern52(r, length_scale);
        }
    }

    model.jitter_ = jitter;
    for (int attempt = 0;; ++attempt) {
        Eigen::MatrixXd reg = kernel;
        reg.diagonal().array() += model.jitter_;
        model.llt_.compute(reg);
        if (model.llt_.info() == Eigen::Success) break;
        if (attempt >= 3) {
            throw NumericalError("GpModel::fit: kernel factorization failed after "
                                 "jitter escalation");
        }
        model.jitter_ *= 10.0;
    }

    model.alpha_ = model.llt_.solve(model.z_);

    double log_det = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        log_det += 2.0 * std::log(model.llt_.matrixL()(i, i));
    }
    model.lml_ = -0.5 * model.z_.dot(model.alpha_) - 0.5 * log_det -
                 0.5 * static_cast<double>(n) * std::log(2.0 * std::numbers::pi);
    return model;
}

GpModel::Prediction GpModel::predict(const std::vector<double>& x) const {
    const Eigen::Index n = inputs_.rows();
    Eigen::VectorXd q(static_cast<Eigen::Index>(x.size()));
    for (Eigen::Index j = 0; j < q.size(); ++j) {
        q(j) = x[static_cast<std::size_t>(j)];
    }
    Eigen::VectorXd k_star(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        k_star(i) = matern52((inputs_.row(i).transpose() - q).norm(), length_scale_);
    }
    const double mean_z = k_star.dot(alpha_);
    const Eigen::VectorXd w = llt_.solve(k_star);
    const double var_z = std::max(1.0 - k_star.dot(w), 0.0);

    Prediction p;
    p.mean = mean_y_ + std_y_ * mean_z;
    p.var = std_y_ * std_y_ * var_z;
    return p;
}

GpModel gp_fit(const std::vector<GpObservation>& observations, const GpConfig& config) {
    if (config.length_scale_grid.empty()) {
        throw std::invalid_argument("gp_fit: empty length-scale grid");
    }
    GpModel best = GpModel::fit(observations, config.length_scale_grid.front(),
                                config.jitter);
    for (std::size_t i = 1; i < config.length_scale_grid.size(); ++i) {
        GpModel m = GpModel::fit(observations, config.length_scale_grid[i],
                                 config.jitter);
        if (m.log_marginal_likelihood() > best.log_marginal_likelihood()) {
            best = std::move(m);
        }
    }
    return best;
}

double expected_improvement(const GpModel& model, const std::vector<double>& x,
                            double t_best, double xi) {
    const GpModel::Prediction p = model.predict(x);
    const double s = std::sqrt(std::max(p.var, 0.0));
    const double delta = p.mean - t_best - xi;
    if (s <= 0.0) return std::max(delta, 0.0);
    const double z = delta / s;
    const double ei = delta * norm_cdf(z) + s * norm_pdf(z);
    return std::max(ei, 0.0);
}

}  // namespace autoplan
