#include "lexbridge/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "lexbridge/errors.hpp"

namespace lexbridge {

namespace {

double cosine(std::span<const double> a, std::span<const float> b, double norm_a) {
    double dot = 0.0;
    double norm_b_sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double bi = static_cast<double>(b[i]);
        dot += a[i] * bi;
        norm_b_sq += bi * bi;
    }
    if (norm_a == 0.0 || norm_b_sq == 0.0) return 0.0;
    return dot / (norm_a * std::sqrt(norm_b_sq));
}

}  // namespace

TranslationCandidates rank_by_cosine(const std::string& query, std::span<const double> projected,
                                     const EmbeddingSpace& target_space, std::size_t k) {
    if (k < 1) throw_config("k must be >= 1");
    if (k > target_space.size()) {
        throw_config("k = " + std::to_string(k) + " exceeds target vocabulary size " +
                     std::to_string(target_space.size()));
    }
    if (static_cast<int>(projected.size()) != target_space.dim()) {
        throw_config("projected vector dimension does not match the target space");
    }

    double norm_sq = 0.0;
    for (double v : projected) norm_sq += v * v;
    const double norm = std::sqrt(norm_sq);

    // Score the full vocabulary, then keep the k best. Ties break on the
    // word so rankings are a total order.
    std::vector<std::pair<double, std::size_t>> scored(target_space.size());
    for (std::size_t row = 0; row < target_space.size(); ++row) {
        scored[row] = {cosine(projected, target_space.row(row), norm), row};
    }
    auto better = [&](const std::pair<double, std::size_t>& a,
                      const std::pair<double, std::size_t>& b) {
        if (a.first != b.first) return a.first > b.first;
        return target_space.word_at(a.second) < target_space.word_at(b.second);
    };
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k), scored.end(),
                      better);

    TranslationCandidates out;
    out.query = query;
    out.ranked.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.ranked.push_back({target_space.word_at(scored[i].second), scored[i].first});
    }
    return out;
}

TranslationCandidates translate(const std::string& query, const ProjectionModel& model,
                                const EmbeddingSpace& source_space,
                                const EmbeddingSpace& target_space, std::size_t k) {
    const std::size_t row = source_space.find(query);
    if (row == EmbeddingSpace::npos) {
        throw_config("query out of vocabulary: " + query);
    }
    const std::vector<double> projected = model.apply(source_space.row(row));
    return rank_by_cosine(query, projected, target_space, k);
}

BatchTranslationResult translate_batch(const std::vector<std::string>& queries,
                                       const ProjectionModel& model,
                                       const EmbeddingSpace& source_space,
                                       const EmbeddingSpace& target_space, std::size_t k) {
    BatchTranslationResult out;
    out.results.reserve(queries.size());
    for (const std::string& query : queries) {
        if (!source_space.contains(query)) {
            out.skipped_oov.push_back(query);
            continue;
        }
        out.results.push_back(translate(query, model, source_space, target_space, k));
    }
    return out;
}

std::string format_translations_tsv(const std::vector<TranslationCandidates>& translations) {
    std::string out;
    char score[32];
    for (const auto& entry : translations) {
        for (std::size_t rank = 0; rank < entry.ranked.size(); ++rank) {
            std::snprintf(score, sizeof(score), "%.6f", entry.ranked[rank].score);
            out += entry.query;
            out.push_back('\t');
            out += std::to_string(rank + 1);
            out.push_back('\t');
            out += entry.ranked[rank].word;
            out.push_back('\t');
            out += score;
            out.push_back('\n');
        }
    }
    return out;
}

}  // namespace lexbridge
