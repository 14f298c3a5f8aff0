#pragma once

#include <span>
#include <string>
#include <vector>

#include "lexbridge/embedding.hpp"
#include "lexbridge/projection.hpp"

namespace lexbridge {

struct ScoredWord {
    std::string word;
    double score = 0.0;  // cosine similarity in [-1, 1]
};

struct TranslationCandidates {
    std::string query;
    std::vector<ScoredWord> ranked;  // descending score, ties lexicographic
};

// Projects the query vector and ranks the whole target vocabulary by cosine
// similarity (exact scan, no approximation). The query must be in the source
// space and k must not exceed the target vocabulary size.
TranslationCandidates translate(const std::string& query, const ProjectionModel& model,
                                const EmbeddingSpace& source_space,
                                const EmbeddingSpace& target_space, std::size_t k);

// Ranks a pre-projected target-space point; translate() is this plus apply().
TranslationCandidates rank_by_cosine(const std::string& query, std::span<const double> projected,
                                     const EmbeddingSpace& target_space, std::size_t k);

struct BatchTranslationResult {
    std::vector<TranslationCandidates> results;   // in query order, OOV queries omitted
    std::vector<std::string> skipped_oov;         // queries without a source vector
};

BatchTranslationResult translate_batch(const std::vector<std::string>& queries,
                                       const ProjectionModel& model,
                                       const EmbeddingSpace& source_space,
                                       const EmbeddingSpace& target_space, std::size_t k);

// TSV rows `query<TAB>rank<TAB>candidate<TAB>score` with 6-decimal scores.
std::string format_translations_tsv(const std::vector<TranslationCandidates>& translations);

}  // namespace lexbridge
