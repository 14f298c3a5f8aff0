#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lexbridge/corpus.hpp"
#include "lexbridge/embedding.hpp"
#include "lexbridge/rng.hpp"

namespace lexbridge {

struct SgnsConfig {
    int dim = 300;
    int window = 5;                    // effective window drawn uniform in 1..window
    int negatives = 5;
    int epochs = 5;
    double initial_learning_rate = 0.025;
    double final_learning_rate = 1e-4;  // linear decay floor
    std::uint64_t min_count = 1;
    double subsample_threshold = 1e-3;  // 0 disables subsampling
    std::uint64_t seed = 1;
    unsigned workers = 1;               // >1 trades determinism for speed

    void validate() const;
};

struct TrainStats {
    std::vector<double> epoch_mean_loss;
    std::uint64_t pairs_processed = 0;
    bool deterministic = true;
};

// Negative-sampling distribution: unigram counts raised to the 0.75 power,
// sampled by inverse-CDF binary search so probabilities are exact.
class UnigramSampler {
  public:
    UnigramSampler(std::span<const std::uint64_t> counts, double exponent = 0.75);

    std::size_t sample(Rng& rng) const;
    double probability(std::size_t index) const;
    std::size_t size() const { return cumulative_.size(); }

  private:
    std::vector<double> cumulative_;
    double total_ = 0.0;
};

// Loss of one (center, context) pair with a fixed set of negatives:
//   -(log sigmoid(v.u_o) + sum_k log sigmoid(-v.u_k))
// `negatives` holds k vectors of dim components, flattened.
double sgns_pair_loss(std::span<const double> center_in, std::span<const double> context_out,
                      std::span<const double> negatives_out);

// Analytic gradients of sgns_pair_loss with respect to all three arguments.
// Output spans must match the input sizes.
void sgns_pair_gradients(std::span<const double> center_in, std::span<const double> context_out,
                         std::span<const double> negatives_out, std::span<double> grad_center,
                         std::span<double> grad_context, std::span<double> grad_negatives);

// Trains input and output vector tables on the corpus and returns the input
// vectors, one per vocabulary word (ordered by descending count, then word).
// Single-worker runs are bit-reproducible for a given seed; multi-worker
// runs update shared tables without synchronization and are not.
EmbeddingSpace train_sgns(const Corpus& corpus, const SgnsConfig& config,
                          TrainStats* stats = nullptr);

}  // namespace lexbridge
