#include "cuephrase/rng.hpp"

#include "cuephrase/errors.hpp"

namespace cuephrase {

std::size_t Rng::weighted(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ValidationError("negative weight in distribution");
        total += w;
    }
    if (total <= 0.0) throw ValidationError("weighted draw needs at least one positive weight");
    double target = next_double() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (target < acc) return i;
    }
    // Rounding can leave target == total; return the last positive-weight index.
    for (std::size_t i = weights.size(); i > 0; --i)
        if (weights[i - 1] > 0.0) return i - 1;
    return weights.size() - 1;
}

}  // namespace cuephrase
