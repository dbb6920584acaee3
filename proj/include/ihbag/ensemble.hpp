#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ihbag/classifier.hpp"
#include "ihbag/dataset.hpp"
#include "ihbag/hardness.hpp"
#include "ihbag/random.hpp"

namespace ihbag {

/// Per-instance selection probabilities plus the running sum used for
/// inverse-CDF draws.
///
/// Built from non-negative integer weights W_i: p_i = W_i / sum(W) and
/// cumulative_i = (W_0 + ... + W_i) / sum(W). Both divisions are of
/// exactly representable integers, so equal weights give p_i = 1/n exactly
/// and the last cumulative entry is exactly 1.
struct SamplingDistribution {
    std::vector<double> probabilities;
    std::vector<double> cumulative;

    std::size_t size() const noexcept { return probabilities.size(); }

    /// One inverse-CDF draw: the first index whose cumulative value exceeds u.
    std::size_t draw(double u) const;
};

SamplingDistribution distribution_from_weights(std::span<const std::uint64_t> weights);
SamplingDistribution uniform_distribution(std::size_t n);

/// Unnormalized selection likelihood f(x_i) = 1/n + (1 - kDN(x_i)).
std::vector<double> selection_likelihood(const HardnessProfile& h);

/// Normalized f(x_i). Computed through the integer weights n*k*f(x_i) =
/// k + n*(k - disagreeing_i).
SamplingDistribution selection_distribution(const HardnessProfile& h);

/// n_b indices drawn independently with replacement.
IndexList bootstrap_sample(const SamplingDistribution& dist, std::size_t n_b, Seed seed);

enum class PoolMethod { bagging, bagging_ih, random_subspace };

std::string_view pool_method_name(PoolMethod m);

/// m trained classifiers plus what produced them. Bootstrap index lists are
/// kept for bagging-style pools (empty for random subspace).
class TrainedPool {
public:
    TrainedPool(PoolMethod method, std::vector<TrainedClassifier> classifiers,
                std::vector<IndexList> bootstraps, std::vector<Seed> member_seeds, Seed seed);

    PoolMethod method() const noexcept { return method_; }
    std::size_t size() const noexcept { return classifiers_.size(); }
    const std::vector<TrainedClassifier>& classifiers() const noexcept { return classifiers_; }
    const std::vector<IndexList>& bootstraps() const noexcept { return bootstraps_; }
    const std::vector<Seed>& member_seeds() const noexcept { return member_seeds_; }
    Seed seed() const noexcept { return seed_; }
    int class_count() const noexcept { return classifiers_.front().class_count(); }

private:
    PoolMethod method_;
    std::vector<TrainedClassifier> classifiers_;
    std::vector<IndexList> bootstraps_;
    std::vector<Seed> member_seeds_;
    Seed seed_;
};

/// Pool whose bootstrap sets are drawn from `dist`. Member i draws its sample
/// from mix_seed(seed, "bootstrap", i) and trains from
/// mix_seed(seed, "classifier", i); spec.seed is not used.
TrainedPool generate_weighted_pool(PoolMethod method, const Dataset& train,
                                   const SamplingDistribution& dist, std::size_t pool_size,
                                   std::size_t bootstrap_size, const ClassifierSpec& spec, Seed seed);

TrainedPool generate_bagging(const Dataset& train, std::size_t pool_size, std::size_t bootstrap_size,
                             const ClassifierSpec& spec, Seed seed);

/// kDN on `train`, selection probabilities from it, then weighted bagging.
TrainedPool generate_bagging_ih(const Dataset& train, std::size_t pool_size,
                                std::size_t bootstrap_size, const ClassifierSpec& spec, int k,
                                Seed seed);

/// Feature count each Random Subspace member sees: max(1, floor(fraction * d)).
std::size_t subspace_size(std::size_t n_features, double feature_fraction);

/// Every member trains on the full training set restricted to its own
/// feature subset, drawn without replacement from mix_seed(seed, "subspace", i).
TrainedPool generate_random_subspace(const Dataset& train, std::size_t pool_size,
                                     double feature_fraction, const ClassifierSpec& spec, Seed seed);

/// Majority vote; ties go to the lowest class index.
int pool_predict(const TrainedPool& pool, std::span<const double> x);

double accuracy(const TrainedPool& pool, const Dataset& d);

} // namespace ihbag
