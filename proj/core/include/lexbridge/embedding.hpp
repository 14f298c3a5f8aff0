#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace lexbridge {

// word -> dense float vector of fixed dimensionality. Rows are stored
// contiguously; insertion order is preserved and is the on-disk order.
class EmbeddingSpace {
  public:
    EmbeddingSpace() = default;
    explicit EmbeddingSpace(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    std::size_t size() const { return words_.size(); }
    bool normalized() const { return normalized_; }
    void set_normalized(bool value) { normalized_ = value; }

    bool contains(const std::string& word) const { return index_.count(word) != 0; }

    // Row index of a word, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t find(const std::string& word) const {
        auto it = index_.find(word);
        return it == index_.end() ? npos : it->second;
    }

    const std::vector<std::string>& words() const { return words_; }
    const std::string& word_at(std::size_t row) const { return words_[row]; }

    std::span<const float> row(std::size_t i) const {
        return {data_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }
    std::span<float> mutable_row(std::size_t i) {
        return {data_.data() + i * static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_)};
    }

    // Vector for a word; throws a config error for unknown words.
    std::span<const float> vector(const std::string& word) const;

    // Inserts or overwrites. Returns the row index.
    std::size_t add(const std::string& word, std::span<const float> values);

    const std::vector<float>& data() const { return data_; }

  private:
    int dim_ = 0;
    bool normalized_ = false;
    std::vector<std::string> words_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<float> data_;
};

enum class EmbeddingFormat { text, binary };

EmbeddingFormat parse_embedding_format(const std::string& name);

struct EmbeddingLoadStats {
    std::size_t duplicate_words = 0;  // later occurrences overwrote earlier ones
};

// Text: header "V D\n", then one "word v1 ... vD" line per record.
// Binary: the same LF-terminated ASCII header, then V records of word bytes
// terminated by a single space followed by D little-endian float32 values,
// with no record separator.
EmbeddingSpace load_embeddings(const std::filesystem::path& path, EmbeddingFormat format,
                               EmbeddingLoadStats* stats = nullptr);

// Inverse of load_embeddings; text floats use 6 significant digits.
void save_embeddings(const EmbeddingSpace& space, const std::filesystem::path& path,
                     EmbeddingFormat format);

// Returns a copy with every vector scaled to unit L2 norm. A zero vector
// is an error naming the word.
EmbeddingSpace normalize(const EmbeddingSpace& space);

}  // namespace lexbridge
