#include "ihbag/ensemble.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "ihbag/error.hpp"

namespace ihbag {

std::size_t SamplingDistribution::draw(double u) const {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    const auto idx = static_cast<std::size_t>(it - cumulative.begin());
    return std::min(idx, cumulative.size() - 1);
}

SamplingDistribution distribution_from_weights(std::span<const std::uint64_t> weights) {
    if (weights.empty()) throw ValidationError("sampling distribution: no instances");
    std::uint64_t total = 0;
    for (auto w : weights) total += w;
    if (total == 0) throw ValidationError("sampling distribution: all weights are zero");
    if (total > (std::uint64_t{1} << 53))
        throw ValidationError("sampling distribution: weights too large for exact normalization");

    SamplingDistribution dist;
    dist.probabilities.resize(weights.size());
    dist.cumulative.resize(weights.size());
    const auto denom = static_cast<double>(total);
    std::uint64_t running = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        running += weights[i];
        dist.probabilities[i] = static_cast<double>(weights[i]) / denom;
        dist.cumulative[i] = static_cast<double>(running) / denom;
    }
    return dist;
}

SamplingDistribution uniform_distribution(std::size_t n) {
    const std::vector<std::uint64_t> ones(n, 1);
    return distribution_from_weights(ones);
}

std::vector<double> selection_likelihood(const HardnessProfile& h) {
    const double n = static_cast<double>(h.size());
    std::vector<double> f(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) f[i] = 1.0 / n + (1.0 - h.value(i));
    return f;
}

SamplingDistribution selection_distribution(const HardnessProfile& h) {
    if (h.size() == 0) throw ValidationError("selection_distribution: empty hardness profile");
    const auto n = static_cast<std::uint64_t>(h.size());
    const auto k = static_cast<std::uint64_t>(h.k());
    std::vector<std::uint64_t> weights(h.size());
    for (std::size_t i = 0; i < h.size(); ++i)
        weights[i] = k + n * (k - static_cast<std::uint64_t>(h.disagreeing(i)));
    return distribution_from_weights(weights);
}

IndexList bootstrap_sample(const SamplingDistribution& dist, std::size_t n_b, Seed seed) {
    if (dist.size() == 0) throw ValidationError("bootstrap_sample: empty distribution");
    Engine eng(seed);
    IndexList out(n_b);
    for (auto& idx : out) idx = dist.draw(uniform01(eng));
    return out;
}

std::string_view pool_method_name(PoolMethod m) {
    switch (m) {
    case PoolMethod::bagging: return "bagging";
    case PoolMethod::bagging_ih: return "bagging-ih";
    case PoolMethod::random_subspace: return "random-subspace";
    }
    return "unknown";
}

TrainedPool::TrainedPool(PoolMethod method, std::vector<TrainedClassifier> classifiers,
                         std::vector<IndexList> bootstraps, std::vector<Seed> member_seeds,
                         Seed seed)
    : method_(method),
      classifiers_(std::move(classifiers)),
      bootstraps_(std::move(bootstraps)),
      member_seeds_(std::move(member_seeds)),
      seed_(seed) {
    if (classifiers_.empty()) throw ValidationError("pool: needs at least one classifier");
    if (method_ != PoolMethod::random_subspace && bootstraps_.size() != classifiers_.size())
        throw ValidationError("pool: one bootstrap list per classifier required");
    if (!bootstraps_.empty()) {
        const auto n_b = bootstraps_.front().size();
        for (const auto& b : bootstraps_) {
            if (b.size() != n_b) throw ValidationError("pool: bootstrap lists differ in length");
        }
    }
    const int classes = classifiers_.front().class_count();
    const auto dim = classifiers_.front().input_dim();
    for (const auto& c : classifiers_) {
        if (c.class_count() != classes || c.input_dim() != dim)
            throw DimensionError("pool: members disagree on class count or input dimension");
    }
}

namespace {
void check_pool_args(const Dataset& train, std::size_t pool_size) {
    if (pool_size < 1) throw ValidationError("pool: pool size must be >= 1");
    if (train.size() < 1) throw ValidationError("pool: empty training set");
}
} // namespace

TrainedPool generate_weighted_pool(PoolMethod method, const Dataset& train,
                                   const SamplingDistribution& dist, std::size_t pool_size,
                                   std::size_t bootstrap_size, const ClassifierSpec& spec,
                                   Seed seed) {
    check_pool_args(train, pool_size);
    if (bootstrap_size < 1) throw ValidationError("pool: bootstrap size must be >= 1");
    if (dist.size() != train.size())
        throw DimensionError(fmt::format("pool: distribution over {} instances, training set has {}",
                                         dist.size(), train.size()));
    std::vector<TrainedClassifier> members;
    std::vector<IndexList> bootstraps;
    std::vector<Seed> seeds;
    members.reserve(pool_size);
    for (std::size_t i = 0; i < pool_size; ++i) {
        bootstraps.push_back(bootstrap_sample(dist, bootstrap_size, mix_seed(seed, "bootstrap", i)));
        ClassifierSpec member = spec;
        member.seed = mix_seed(seed, "classifier", i);
        seeds.push_back(member.seed);
        members.push_back(train_perceptron_ova(train, bootstraps.back(), {}, member));
    }
    return TrainedPool(method, std::move(members), std::move(bootstraps), std::move(seeds), seed);
}

TrainedPool generate_bagging(const Dataset& train, std::size_t pool_size,
                             std::size_t bootstrap_size, const ClassifierSpec& spec, Seed seed) {
    check_pool_args(train, pool_size);
    return generate_weighted_pool(PoolMethod::bagging, train, uniform_distribution(train.size()),
                                  pool_size, bootstrap_size, spec, seed);
}

TrainedPool generate_bagging_ih(const Dataset& train, std::size_t pool_size,
                                std::size_t bootstrap_size, const ClassifierSpec& spec, int k,
                                Seed seed) {
    check_pool_args(train, pool_size);
    const auto hardness = kdn(train, k);
    return generate_weighted_pool(PoolMethod::bagging_ih, train, selection_distribution(hardness),
                                  pool_size, bootstrap_size, spec, seed);
}

std::size_t subspace_size(std::size_t n_features, double feature_fraction) {
    if (!(feature_fraction > 0.0 && feature_fraction <= 1.0))
        throw ValidationError("random subspace: feature fraction must be in (0, 1]");
    const auto size = static_cast<std::size_t>(feature_fraction * static_cast<double>(n_features));
    return std::clamp<std::size_t>(size, 1, n_features);
}

TrainedPool generate_random_subspace(const Dataset& train, std::size_t pool_size,
                                     double feature_fraction, const ClassifierSpec& spec,
                                     Seed seed) {
    check_pool_args(train, pool_size);
    const std::size_t d = train.feature_count();
    const std::size_t keep = subspace_size(d, feature_fraction);
    std::vector<TrainedClassifier> members;
    std::vector<Seed> seeds;
    members.reserve(pool_size);
    for (std::size_t i = 0; i < pool_size; ++i) {
        IndexList features(d);
        std::iota(features.begin(), features.end(), std::size_t{0});
        Engine eng(mix_seed(seed, "subspace", i));
        // Partial Fisher-Yates: the first `keep` slots become a uniform subset.
        for (std::size_t j = 0; j < keep; ++j) {
            const auto pick = j + static_cast<std::size_t>(uniform_below(eng, d - j));
            std::swap(features[j], features[pick]);
        }
        features.resize(keep);
        std::sort(features.begin(), features.end());

        ClassifierSpec member = spec;
        member.seed = mix_seed(seed, "classifier", i);
        seeds.push_back(member.seed);
        members.push_back(train_perceptron_ova(train, {}, features, member));
    }
    return TrainedPool(PoolMethod::random_subspace, std::move(members), {}, std::move(seeds), seed);
}

int pool_predict(const TrainedPool& pool, std::span<const double> x) {
    std::vector<std::size_t> votes(static_cast<std::size_t>(pool.class_count()), 0);
    for (const auto& c : pool.classifiers()) ++votes[static_cast<std::size_t>(c.predict(x))];
    return static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

double accuracy(const TrainedPool& pool, const Dataset& d) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < d.size(); ++i) hits += pool_predict(pool, d.row(i)) == d.label(i);
    return static_cast<double>(hits) / static_cast<double>(d.size());
}

} // namespace ihbag
