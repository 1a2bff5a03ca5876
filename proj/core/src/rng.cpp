#include "cmdp/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace cmdp {

double Rng::next_exponential() {
    // 1 - u01 lies in (0,1], so the log is finite.
    return -std::log(1.0 - next_u01());
}

int Rng::next_index(int n) {
    if (n <= 0) throw std::invalid_argument("Rng::next_index: n must be positive");
    return static_cast<int>(next_u01() * n) % n;
}

int Rng::sample(std::span<const double> probs) {
    const double u = next_u01();
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
        cum += probs[i];
        if (u < cum) return static_cast<int>(i);
    }
    return static_cast<int>(probs.size()) - 1;
}

void Rng::dirichlet_uniform(std::span<double> out) {
    double sum = 0.0;
    for (double& v : out) {
        v = next_exponential();
        sum += v;
    }
    if (sum <= 0.0) {  // astronomically unlikely; keep the row valid
        const double w = 1.0 / static_cast<double>(out.size());
        for (double& v : out) v = w;
        return;
    }
    for (double& v : out) v /= sum;
}

}  // namespace cmdp
