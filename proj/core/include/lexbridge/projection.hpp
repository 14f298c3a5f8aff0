#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "lexbridge/embedding.hpp"

namespace lexbridge {

struct DictionaryPair {
    std::string source;
    std::string target;
};

struct DictionarySkipReport {
    std::vector<DictionaryPair> skipped_oov;  // pairs dropped for missing vectors
    std::size_t duplicates = 0;               // exact repeats, first kept
    std::size_t total_lines = 0;
};

// Usable, deduplicated translation pairs; both sides have vectors.
struct TrainingDictionary {
    std::vector<DictionaryPair> pairs;
    std::size_t m() const { return pairs.size(); }
};

// TSV `source<TAB>target`, one pair per line. Pairs with an out-of-vocabulary
// side are skipped (reported), exact duplicates keep the first occurrence.
TrainingDictionary load_dictionary(const std::filesystem::path& path,
                                   const EmbeddingSpace& source_space,
                                   const EmbeddingSpace& target_space,
                                   DictionarySkipReport* report = nullptr);

struct FitReport {
    double residual_frobenius = 0.0;  // ||XW - Y||_F on the training pairs
    std::size_t m = 0;
    int source_dim = 0;
    int target_dim = 0;
};

// Linear map from the source space into the target space, row-vector
// convention: y = x * W with W of shape source_dim x target_dim.
class ProjectionModel {
  public:
    ProjectionModel() = default;
    ProjectionModel(int source_dim, int target_dim, double lambda, std::vector<double> weights);

    int source_dim() const { return source_dim_; }
    int target_dim() const { return target_dim_; }
    double lambda() const { return lambda_; }
    const std::vector<double>& weights() const { return weights_; }  // row-major s x t
    double weight(int i, int j) const { return weights_[static_cast<std::size_t>(i) * target_dim_ + j]; }

    const FitReport& fit_report() const { return fit_report_; }
    void set_fit_report(const FitReport& report) { fit_report_ = report; }

    std::vector<double> apply(std::span<const double> x) const;
    std::vector<double> apply(std::span<const float> x) const;

  private:
    int source_dim_ = 0;
    int target_dim_ = 0;
    double lambda_ = 0.0;
    std::vector<double> weights_;
    FitReport fit_report_;
};

// Ridge solution W = (X'X + lambda I)^-1 X'Y via an LDLT factorization of
// the (symmetric positive definite) regularized Gram matrix. X is m x s and
// Y is m x t, both row-major; the result is row-major s x t. lambda = 0 is
// accepted only when X'X is well conditioned.
std::vector<double> solve_ridge(std::span<const double> X, std::span<const double> Y,
                                std::size_t m, int s, int t, double lambda);

// solve_ridge over the dictionary pairs, X stacking source vectors row-wise
// and Y the matching target vectors. Both spaces must be unit-normalized.
ProjectionModel fit_projection(const TrainingDictionary& dictionary,
                               const EmbeddingSpace& source_space,
                               const EmbeddingSpace& target_space, double lambda);

// Text format: header `s t lambda`, then s lines of t decimal floats.
void save_model(const ProjectionModel& model, const std::filesystem::path& path);
ProjectionModel load_model(const std::filesystem::path& path);

}  // namespace lexbridge
