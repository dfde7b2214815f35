#pragma once

#include <vector>

#include <Eigen/Dense>

namespace autoplan {

struct GpConfig {
    std::vector<double> length_scale_grid{0.05, 0.1, 0.2, 0.4};  // normalized units
    double jitter = 1e-6;
    double xi = 0.01;  // EI exploration offset, standardized units
};

struct GpObservation {
    std::vector<double> x;  // position, normalized coordinates
    double t = 0.0;         // observed target value
};

// Exact Gaussian-process regression with a Matern 5/2 kernel. Outputs are
// standardized internally (unit signal variance) and de-standardized on
// prediction; a diagonal jitter absorbs duplicate inputs.
class GpModel {
public:
    struct Prediction {
        double mean = 0.0;
        double var = 0.0;  // clamped at 0
    };

    // Fits with a fixed length scale. Escalates jitter x10 up to 3 times if the
    // Cholesky factorization fails, then throws NumericalError.
    static GpModel fit(const std::vector<GpObservation>& observations,
                       double length_scale, double jitter);

    Prediction predict(const std::vector<double>& x) const;

    double log_marginal_likelihood() const { return lml_; }
    double length_scale() const { return length_scale_; }
    double output_mean() const { return mean_y_; }
    double output_std() const { return std_y_; }
    double jitter() const { return jitter_; }

private:
    GpModel() = default;

    Eigen::MatrixXd inputs_;       // n x d
    Eigen::VectorXd z_;            // standardized targets
    Eigen::VectorXd alpha_;        // (K + jitter I)^-1 z
    Eigen::LLT<Eigen::MatrixXd> llt_;
    double mean_y_ = 0.0;
    double std_y_ = 1.0;
    double length_scale_ = 0.1;
    double jitter_ = 1e-6;
    double lml_ = 0.0;
};

// Fits one model per grid length scale and keeps the one with the highest log
// marginal likelihood (first on ties).
GpModel gp_fit(const std::vector<GpObservation>& observations, const GpConfig& config);

// Closed-form expected improvement over t_best with exploration offset xi, in
// the model's output units. Always >= 0.
double expected_improvement(const GpModel& model, const std::vector<double>& x,
                            double t_best, double xi);

}  // namespace autoplan
