#include "treelab/estimation.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace treelab {

double hoeffding_epsilon(int n, int p, double delta) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (p < 2) throw std::invalid_argument("p must be >= 2");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
    return std::sqrt(2.0 / n * std::log(2.0 * p * p / delta));
}

double strong_edge_threshold(double epsilon, double beta) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    if (beta < 0.0) throw std::invalid_argument("beta must be non-negative");
    return 4.0 * epsilon / std::sqrt(1.0 - std::tanh(beta));
}

ThresholdSpec ThresholdSpec::from(int n, int p, double delta, double beta) {
    ThresholdSpec t;
    t.epsilon = hoeffding_epsilon(n, p, delta);
    t.tau = strong_edge_threshold(t.epsilon, beta);
    t.n = n;
    t.p = p;
    t.delta = delta;
    t.beta = beta;
    return t;
}

CorrelationMatrix empirical_correlations(const SampleMatrix& s) {
    if (s.n < 1 || s.p < 1) throw std::invalid_argument("empty sample matrix");
    const int p = s.p;
    std::vector<std::int64_t> acc(static_cast<std::size_t>(p) * p, 0);
    for (int l = 0; l < s.n; ++l) {
        const std::int8_t* row = &s.spins[static_cast<std::size_t>(l) * p];
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                acc[static_cast<std::size_t>(i) * p + j] += row[i] * row[j];
    }
    CorrelationMatrix c(p);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            c.set(i, j, static_cast<double>(acc[static_cast<std::size_t>(i) * p + j]) / s.n);
    return c;
}

}  // namespace treelab
