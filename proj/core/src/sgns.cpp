#include "lexbridge/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <thread>
#include <unordered_map>

#include "lexbridge/errors.hpp"

namespace lexbridge {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double dot(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += a[i] * b[i];
    return sum;
}

// log(sigmoid(x)) without overflow for large negative x.
double log_sigmoid(double x) {
    if (x >= 0.0) return -std::log1p(std::exp(-x));
    return x - std::log1p(std::exp(x));
}

}  // namespace

void SgnsConfig::validate() const {
    if (dim < 1) throw_config("sgns: dim must be >= 1");
    if (window < 1) throw_config("sgns: window must be >= 1");
    if (negatives < 1) throw_config("sgns: negatives must be >= 1");
    if (epochs < 1) throw_config("sgns: epochs must be >= 1");
    if (initial_learning_rate <= 0.0) throw_config("sgns: initial learning rate must be > 0");
    if (final_learning_rate <= 0.0) throw_config("sgns: final learning rate must be > 0");
    if (min_count < 1) throw_config("sgns: min_count must be >= 1");
    if (subsample_threshold < 0.0) throw_config("sgns: subsample threshold must be >= 0");
    if (workers < 1) throw_config("sgns: workers must be >= 1");
}

UnigramSampler::UnigramSampler(std::span<const std::uint64_t> counts, double exponent) {
    cumulative_.reserve(counts.size());
    double running = 0.0;
    for (std::uint64_t c : counts) {
        running += std::pow(static_cast<double>(c), exponent);
        cumulative_.push_back(running);
    }
    total_ = running;
    if (!(total_ > 0.0)) throw_config("sgns: negative-sampling distribution has zero mass");
}

std::size_t UnigramSampler::sample(Rng& rng) const {
    const double u = rng.uniform_double() * total_;
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    if (it == cumulative_.end()) --it;
    return static_cast<std::size_t>(it - cumulative_.begin());
}

double UnigramSampler::probability(std::size_t index) const {
    const double prev = index == 0 ? 0.0 : cumulative_[index - 1];
    return (cumulative_[index] - prev) / total_;
}

double sgns_pair_loss(std::span<const double> center_in, std::span<const double> context_out,
                      std::span<const double> negatives_out) {
    const std::size_t dim = center_in.size();
    double loss = -log_sigmoid(dot(center_in, context_out));
    for (std::size_t offset = 0; offset < negatives_out.size(); offset += dim) {
        loss -= log_sigmoid(-dot(center_in, negatives_out.subspan(offset, dim)));
    }
    return loss;
}

void sgns_pair_gradients(std::span<const double> center_in, std::span<const double> context_out,
                         std::span<const double> negatives_out, std::span<double> grad_center,
                         std::span<double> grad_context, std::span<double> grad_negatives) {
    const std::size_t dim = center_in.size();
    // Positive target: d(-log sigmoid(v.u)) / d(v.u) = sigmoid(v.u) - 1.
    const double coef_pos = sigmoid(dot(center_in, context_out)) - 1.0;
    for (std::size_t d = 0; d < dim; ++d) {
        grad_center[d] = coef_pos * context_out[d];
        grad_context[d] = coef_pos * center_in[d];
    }
    // Negative targets: d(-log sigmoid(-v.u)) / d(v.u) = sigmoid(v.u).
    for (std::size_t offset = 0; offset < negatives_out.size(); offset += dim) {
        auto neg = negatives_out.subspan(offset, dim);
        const double coef = sigmoid(dot(center_in, neg));
        for (std::size_t d = 0; d < dim; ++d) {
            grad_center[d] += coef * neg[d];
            grad_negatives[offset + d] = coef * center_in[d];
        }
    }
}

namespace {

struct Vocabulary {
    std::vector<std::string> words;         // id -> word, by descending count then word
    std::vector<std::uint64_t> counts;      // id -> count
    std::unordered_map<std::string, std::size_t> index;
    std::uint64_t train_tokens = 0;         // total in-vocabulary occurrences
};

Vocabulary build_vocabulary(const Corpus& corpus, std::uint64_t min_count) {
    std::unordered_map<std::string, std::uint64_t> counts;
    for (const auto& line : corpus.lines) {
        for (const auto& token : line) ++counts[token];
    }
    Vocabulary vocab;
    std::vector<std::pair<std::string, std::uint64_t>> rows;
    rows.reserve(counts.size());
    for (auto& [word, count] : counts) {
        if (count >= min_count) rows.emplace_back(word, count);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    vocab.words.reserve(rows.size());
    vocab.counts.reserve(rows.size());
    for (auto& [word, count] : rows) {
        vocab.index.emplace(word, vocab.words.size());
        vocab.words.push_back(std::move(word));
        vocab.counts.push_back(count);
        vocab.train_tokens += count;
    }
    return vocab;
}

class Trainer {
  public:
    Trainer(const Corpus& corpus, const SgnsConfig& config)
        : config_(config),
          vocab_(build_vocabulary(corpus, config.min_count)),
          sampler_(vocab_.counts) {
        if (vocab_.words.empty()) {
            throw_config("sgns: effective vocabulary is empty (corpus too small or min_count too high)");
        }
        const std::size_t dim = static_cast<std::size_t>(config_.dim);
        input_.assign(vocab_.words.size() * dim, 0.0f);
        output_.assign(vocab_.words.size() * dim, 0.0f);

        // Keep probability for frequent-word subsampling.
        keep_prob_.assign(vocab_.words.size(), 1.0);
        if (config_.subsample_threshold > 0.0) {
            const double t = config_.subsample_threshold;
            for (std::size_t i = 0; i < vocab_.counts.size(); ++i) {
                const double f = static_cast<double>(vocab_.counts[i]) /
                                 static_cast<double>(vocab_.train_tokens);
                keep_prob_[i] = std::min(1.0, (std::sqrt(f / t) + 1.0) * (t / f));
            }
        }

        // Pre-map lines to ids once; out-of-vocabulary tokens are dropped.
        lines_.reserve(corpus.lines.size());
        for (const auto& line : corpus.lines) {
            std::vector<std::uint32_t> ids;
            ids.reserve(line.size());
            for (const auto& token : line) {
                auto it = vocab_.index.find(token);
                if (it != vocab_.index.end()) ids.push_back(static_cast<std::uint32_t>(it->second));
            }
            if (!ids.empty()) lines_.push_back(std::move(ids));
        }
    }

    EmbeddingSpace run(TrainStats* stats) {
        init_tables();
        const std::uint64_t schedule_total =
            static_cast<std::uint64_t>(config_.epochs) * vocab_.train_tokens + 1;

        if (stats) {
            stats->epoch_mean_loss.clear();
            stats->pairs_processed = 0;
            stats->deterministic = config_.workers == 1;
        }

        if (config_.workers == 1) {
            Rng rng(derive_seed(config_.seed, "sgns-train"));
            for (int epoch = 0; epoch < config_.epochs; ++epoch) {
                double loss_sum = 0.0;
                std::uint64_t pairs = 0;
                process_lines<false>(0, lines_.size(), rng, schedule_total,
                                     stats ? &loss_sum : nullptr, &pairs);
                if (stats) {
                    stats->epoch_mean_loss.push_back(pairs ? loss_sum / static_cast<double>(pairs)
                                                           : 0.0);
                    stats->pairs_processed += pairs;
                }
            }
        } else {
            for (int epoch = 0; epoch < config_.epochs; ++epoch) {
                std::vector<std::thread> pool;
                std::vector<double> losses(config_.workers, 0.0);
                std::vector<std::uint64_t> pair_counts(config_.workers, 0);
                const std::size_t chunk = (lines_.size() + config_.workers - 1) / config_.workers;
                for (unsigned w = 0; w < config_.workers; ++w) {
                    const std::size_t begin = static_cast<std::size_t>(w) * chunk;
                    const std::size_t end = std::min(lines_.size(), begin + chunk);
                    if (begin >= end) break;
                    pool.emplace_back([this, w, begin, end, epoch, schedule_total, stats, &losses,
                                       &pair_counts]() {
                        Rng rng(derive_seed(config_.seed,
                                            "sgns-worker-" + std::to_string(w) + "-epoch-" +
                                                std::to_string(epoch)));
                        process_lines<true>(begin, end, rng, schedule_total,
                                            stats ? &losses[w] : nullptr, &pair_counts[w]);
                    });
                }
                for (auto& th : pool) th.join();
                if (stats) {
                    double loss_sum = 0.0;
                    std::uint64_t pairs = 0;
                    for (unsigned w = 0; w < config_.workers; ++w) {
                        loss_sum += losses[w];
                        pairs += pair_counts[w];
                    }
                    stats->epoch_mean_loss.push_back(pairs ? loss_sum / static_cast<double>(pairs)
                                                           : 0.0);
                    stats->pairs_processed += pairs;
                }
            }
        }

        EmbeddingSpace space(config_.dim);
        const std::size_t dim = static_cast<std::size_t>(config_.dim);
        for (std::size_t i = 0; i < vocab_.words.size(); ++i) {
            space.add(vocab_.words[i], {input_.data() + i * dim, dim});
        }
        return space;
    }

  private:
    void init_tables() {
        // Input vectors uniform in [-0.5/dim, 0.5/dim]; output vectors zero.
        Rng rng(derive_seed(config_.seed, "sgns-init"));
        const double scale = 1.0 / static_cast<double>(config_.dim);
        for (float& v : input_) {
            v = static_cast<float>((rng.uniform_double() - 0.5) * scale);
        }
    }

    // Atomic=true is the multi-worker mode: lost updates between workers are
    // tolerated, but every element access stays a relaxed atomic so the
    // tables never hold torn values.
    template <bool Atomic>
    void process_lines(std::size_t begin, std::size_t end, Rng& rng,
                       std::uint64_t schedule_total, double* loss_sum, std::uint64_t* pairs_out) {
        const std::size_t dim = static_cast<std::size_t>(config_.dim);
        const std::size_t n_neg = static_cast<std::size_t>(config_.negatives);
        std::vector<std::uint32_t> sentence;
        std::vector<std::uint32_t> negative_ids(n_neg);
        std::vector<double> center(dim), context(dim), negatives(n_neg * dim);
        std::vector<double> grad_center(dim), grad_context(dim), grad_negatives(n_neg * dim);
        std::uint64_t pairs = 0;

        for (std::size_t li = begin; li < end; ++li) {
            sentence.clear();
            for (std::uint32_t id : lines_[li]) {
                const std::uint64_t seen = processed_.fetch_add(1, std::memory_order_relaxed) + 1;
                // Linear decay, floored.
                learning_rate_.store(
                    std::max(config_.final_learning_rate,
                             config_.initial_learning_rate *
                                 (1.0 - static_cast<double>(seen) /
                                            static_cast<double>(schedule_total))),
                    std::memory_order_relaxed);
                if (keep_prob_[id] < 1.0 && rng.uniform_double() >= keep_prob_[id]) continue;
                sentence.push_back(id);
            }

            for (std::size_t pos = 0; pos < sentence.size(); ++pos) {
                const std::uint32_t center_id = sentence[pos];
                const std::size_t reach =
                    1 + static_cast<std::size_t>(
                            rng.uniform_index(static_cast<std::uint64_t>(config_.window)));
                const std::size_t lo = pos >= reach ? pos - reach : 0;
                const std::size_t hi = std::min(sentence.size() - 1, pos + reach);
                for (std::size_t cpos = lo; cpos <= hi; ++cpos) {
                    if (cpos == pos) continue;
                    const std::uint32_t context_id = sentence[cpos];
                    for (std::size_t k = 0; k < n_neg; ++k) {
                        negative_ids[k] = static_cast<std::uint32_t>(sampler_.sample(rng));
                    }

                    gather<Atomic>(input_, center_id, center, 0);
                    gather<Atomic>(output_, context_id, context, 0);
                    for (std::size_t k = 0; k < n_neg; ++k) {
                        gather<Atomic>(output_, negative_ids[k], negatives, k * dim);
                    }

                    if (loss_sum) *loss_sum += sgns_pair_loss(center, context, negatives);
                    sgns_pair_gradients(center, context, negatives, grad_center, grad_context,
                                        grad_negatives);

                    const double lr = learning_rate_.load(std::memory_order_relaxed);
                    apply<Atomic>(input_, center_id, grad_center, 0, lr);
                    apply<Atomic>(output_, context_id, grad_context, 0, lr);
                    for (std::size_t k = 0; k < n_neg; ++k) {
                        apply<Atomic>(output_, negative_ids[k], grad_negatives, k * dim, lr);
                    }
                    ++pairs;
                }
            }
        }
        if (pairs_out) *pairs_out = pairs;
    }

    template <bool Atomic>
    void gather(std::vector<float>& table, std::uint32_t id, std::vector<double>& out,
                std::size_t offset) {
        const std::size_t dim = static_cast<std::size_t>(config_.dim);
        float* src = table.data() + static_cast<std::size_t>(id) * dim;
        for (std::size_t d = 0; d < dim; ++d) {
            if constexpr (Atomic) {
                out[offset + d] = static_cast<double>(
                    std::atomic_ref<float>(src[d]).load(std::memory_order_relaxed));
            } else {
                out[offset + d] = static_cast<double>(src[d]);
            }
        }
    }

    template <bool Atomic>
    void apply(std::vector<float>& table, std::uint32_t id, const std::vector<double>& grad,
               std::size_t offset, double lr) {
        const std::size_t dim = static_cast<std::size_t>(config_.dim);
        float* dst = table.data() + static_cast<std::size_t>(id) * dim;
        for (std::size_t d = 0; d < dim; ++d) {
            if constexpr (Atomic) {
                std::atomic_ref<float> cell(dst[d]);
                const auto current = static_cast<double>(cell.load(std::memory_order_relaxed));
                cell.store(static_cast<float>(current - lr * grad[offset + d]),
                           std::memory_order_relaxed);
            } else {
                dst[d] = static_cast<float>(static_cast<double>(dst[d]) - lr * grad[offset + d]);
            }
        }
    }

    SgnsConfig config_;
    Vocabulary vocab_;
    UnigramSampler sampler_;
    std::vector<double> keep_prob_;
    std::vector<std::vector<std::uint32_t>> lines_;
    std::vector<float> input_;
    std::vector<float> output_;
    std::atomic<std::uint64_t> processed_{0};
    std::atomic<double> learning_rate_{0.0};
};

}  // namespace

EmbeddingSpace train_sgns(const Corpus& corpus, const SgnsConfig& config, TrainStats* stats) {
    config.validate();
    if (corpus.token_count == 0) throw_config("sgns: corpus is empty");
    Trainer trainer(corpus, config);
    return trainer.run(stats);
}

}  // namespace lexbridge
