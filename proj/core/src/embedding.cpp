#include "lexbridge/embedding.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lexbridge/errors.hpp"

namespace lexbridge {

namespace {

float read_le_float(const unsigned char* bytes) {
    std::uint32_t u = static_cast<std::uint32_t>(bytes[0]) |
                      (static_cast<std::uint32_t>(bytes[1]) << 8) |
                      (static_cast<std::uint32_t>(bytes[2]) << 16) |
                      (static_cast<std::uint32_t>(bytes[3]) << 24);
    return std::bit_cast<float>(u);
}

void write_le_float(std::string& out, float value) {
    const auto u = std::bit_cast<std::uint32_t>(value);
    out.push_back(static_cast<char>(u & 0xFF));
    out.push_back(static_cast<char>((u >> 8) & 0xFF));
    out.push_back(static_cast<char>((u >> 16) & 0xFF));
    out.push_back(static_cast<char>((u >> 24) & 0xFF));
}

std::pair<std::size_t, int> parse_header(const std::string& line, const std::filesystem::path& path) {
    std::istringstream in(line);
    long long vocab = -1;
    long long dim = -1;
    if (!(in >> vocab >> dim) || vocab < 0 || dim < 1) {
        throw_parse(path.string() + ": bad header, expected 'vocab_size dimension'");
    }
    std::string extra;
    if (in >> extra) throw_parse(path.string() + ": trailing data in header");
    return {static_cast<std::size_t>(vocab), static_cast<int>(dim)};
}

}  // namespace

std::span<const float> EmbeddingSpace::vector(const std::string& word) const {
    const std::size_t i = find(word);
    if (i == npos) throw_config("word not in embedding space: " + word);
    return row(i);
}

std::size_t EmbeddingSpace::add(const std::string& word, std::span<const float> values) {
    if (static_cast<int>(values.size()) != dim_) {
        throw_config("vector for '" + word + "' has " + std::to_string(values.size()) +
                     " components, expected " + std::to_string(dim_));
    }
    auto it = index_.find(word);
    if (it != index_.end()) {
        std::copy(values.begin(), values.end(), mutable_row(it->second).begin());
        return it->second;
    }
    const std::size_t row_index = words_.size();
    words_.push_back(word);
    index_.emplace(word, row_index);
    data_.insert(data_.end(), values.begin(), values.end());
    return row_index;
}

EmbeddingFormat parse_embedding_format(const std::string& name) {
    if (name == "text") return EmbeddingFormat::text;
    if (name == "binary") return EmbeddingFormat::binary;
    throw_config("unknown embedding format '" + name + "' (expected text or binary)");
}

EmbeddingSpace load_embeddings(const std::filesystem::path& path, EmbeddingFormat format,
                               EmbeddingLoadStats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_io("cannot open embeddings file: " + path.string());
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw_io("error reading embeddings file: " + path.string());

    const auto header_end = content.find('\n');
    if (header_end == std::string::npos) throw_parse(path.string() + ": missing header line");
    auto [vocab, dim] = parse_header(content.substr(0, header_end), path);

    EmbeddingSpace space(dim);
    EmbeddingLoadStats local_stats;
    std::vector<float> values(static_cast<std::size_t>(dim));

    if (format == EmbeddingFormat::text) {
        std::istringstream body(content.substr(header_end + 1));
        std::string line;
        std::size_t record = 0;
        while (record < vocab) {
            if (!std::getline(body, line)) {
                throw_parse(path.string() + ": truncated file at record " + std::to_string(record) +
                            " (expected " + std::to_string(vocab) + " records)");
            }
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::istringstream fields(line);
            std::string word;
            fields >> word;
            for (int d = 0; d < dim; ++d) {
                if (!(fields >> values[static_cast<std::size_t>(d)])) {
                    throw_parse(path.string() + ": record " + std::to_string(record) + " ('" + word +
                                "') has fewer than " + std::to_string(dim) + " values");
                }
            }
            std::string extra;
            if (fields >> extra) {
                throw_parse(path.string() + ": record " + std::to_string(record) + " ('" + word +
                            "') has more than " + std::to_string(dim) + " values");
            }
            for (float v : values) {
                if (!std::isfinite(v)) {
                    throw_parse(path.string() + ": non-finite value in record " +
                                std::to_string(record) + " ('" + word + "')");
                }
            }
            if (space.contains(word)) ++local_stats.duplicate_words;
            space.add(word, values);
            ++record;
        }
    } else {
        std::size_t pos = header_end + 1;
        const auto* bytes = reinterpret_cast<const unsigned char*>(content.data());
        for (std::size_t record = 0; record < vocab; ++record) {
            const auto space_pos = content.find(' ', pos);
            if (space_pos == std::string::npos) {
                throw_parse(path.string() + ": truncated file at record " + std::to_string(record));
            }
            std::string word = content.substr(pos, space_pos - pos);
            pos = space_pos + 1;
            if (pos + static_cast<std::size_t>(dim) * 4 > content.size()) {
                throw_parse(path.string() + ": truncated vector in record " + std::to_string(record) +
                            " ('" + word + "')");
            }
            for (int d = 0; d < dim; ++d) {
                values[static_cast<std::size_t>(d)] = read_le_float(bytes + pos);
                pos += 4;
            }
            for (float v : values) {
                if (!std::isfinite(v)) {
                    throw_parse(path.string() + ": non-finite value in record " +
                                std::to_string(record) + " ('" + word + "')");
                }
            }
            if (space.contains(word)) ++local_stats.duplicate_words;
            space.add(word, values);
        }
        if (pos != content.size()) {
            throw_parse(path.string() + ": trailing bytes after the last record");
        }
    }

    if (stats) *stats = local_stats;
    return space;
}

void save_embeddings(const EmbeddingSpace& space, const std::filesystem::path& path,
                     EmbeddingFormat format) {
    std::string out;
    out += std::to_string(space.size());
    out.push_back(' ');
    out += std::to_string(space.dim());
    out.push_back('\n');

    if (format == EmbeddingFormat::text) {
        char buffer[48];
        for (std::size_t i = 0; i < space.size(); ++i) {
            out += space.word_at(i);
            for (float v : space.row(i)) {
                std::snprintf(buffer, sizeof(buffer), " %.6g", static_cast<double>(v));
                out += buffer;
            }
            out.push_back('\n');
        }
    } else {
        for (std::size_t i = 0; i < space.size(); ++i) {
            out += space.word_at(i);
            out.push_back(' ');
            for (float v : space.row(i)) write_le_float(out, v);
        }
    }

    std::ofstream file(path, std::ios::binary);
    if (!file) throw_io("cannot open file for writing: " + path.string());
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) throw_io("error writing file: " + path.string());
}

EmbeddingSpace normalize(const EmbeddingSpace& space) {
    EmbeddingSpace out(space.dim());
    std::vector<float> values(static_cast<std::size_t>(space.dim()));
    for (std::size_t i = 0; i < space.size(); ++i) {
        double sum = 0.0;
        for (float v : space.row(i)) sum += static_cast<double>(v) * static_cast<double>(v);
        if (sum == 0.0) throw_config("cannot normalize zero vector for word: " + space.word_at(i));
        const double inv = 1.0 / std::sqrt(sum);
        auto row = space.row(i);
        for (std::size_t d = 0; d < values.size(); ++d) {
            values[d] = static_cast<float>(static_cast<double>(row[d]) * inv);
        }
        out.add(space.word_at(i), values);
    }
    out.set_normalized(true);
    return out;
}

}  // namespace lexbridge
