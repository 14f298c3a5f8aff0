#include "lexbridge/projection.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "lexbridge/errors.hpp"

namespace lexbridge {

TrainingDictionary load_dictionary(const std::filesystem::path& path,
                                   const EmbeddingSpace& source_space,
                                   const EmbeddingSpace& target_space,
                                   DictionarySkipReport* report) {
    const std::string content = read_text_file(path);
    TrainingDictionary dictionary;
    DictionarySkipReport local;
    std::set<std::pair<std::string, std::string>> seen;

    std::istringstream in(content);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++local.total_lines;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
            throw_parse(path.string() + ":" + std::to_string(line_no) +
                        ": expected source<TAB>target");
        }
        std::string source = line.substr(0, tab);
        std::string target = line.substr(tab + 1);
        if (source.empty() || target.empty()) {
            throw_parse(path.string() + ":" + std::to_string(line_no) + ": empty field");
        }
        if (!seen.emplace(source, target).second) {
            ++local.duplicates;
            continue;
        }
        if (!source_space.contains(source) || !target_space.contains(target)) {
            local.skipped_oov.push_back({std::move(source), std::move(target)});
            continue;
        }
        dictionary.pairs.push_back({std::move(source), std::move(target)});
    }
    if (report) *report = std::move(local);
    return dictionary;
}

ProjectionModel::ProjectionModel(int source_dim, int target_dim, double lambda,
                                 std::vector<double> weights)
    : source_dim_(source_dim), target_dim_(target_dim), lambda_(lambda),
      weights_(std::move(weights)) {
    if (weights_.size() != static_cast<std::size_t>(source_dim_) * target_dim_) {
        throw_config("projection weights size does not match dimensions");
    }
}

std::vector<double> ProjectionModel::apply(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != source_dim_) {
        throw_config("projection input has " + std::to_string(x.size()) +
                     " components, expected " + std::to_string(source_dim_));
    }
    std::vector<double> y(static_cast<std::size_t>(target_dim_), 0.0);
    for (int i = 0; i < source_dim_; ++i) {
        const double xi = x[static_cast<std::size_t>(i)];
        if (xi == 0.0) continue;
        const double* row = weights_.data() + static_cast<std::size_t>(i) * target_dim_;
        for (int j = 0; j < target_dim_; ++j) y[static_cast<std::size_t>(j)] += xi * row[j];
    }
    return y;
}

std::vector<double> ProjectionModel::apply(std::span<const float> x) const {
    std::vector<double> promoted(x.begin(), x.end());
    return apply(std::span<const double>(promoted));
}

std::vector<double> solve_ridge(std::span<const double> X, std::span<const double> Y,
                                std::size_t m, int s, int t, double lambda) {
    if (m == 0) throw_config("solve_ridge: no rows");
    if (s < 1 || t < 1) throw_config("solve_ridge: dimensions must be positive");
    if (lambda < 0.0) throw_config("lambda must be >= 0");
    if (X.size() != m * static_cast<std::size_t>(s) || Y.size() != m * static_cast<std::size_t>(t)) {
        throw_config("solve_ridge: matrix sizes do not match m, s, t");
    }

    using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMajor> Xm(X.data(), static_cast<Eigen::Index>(m), s);
    Eigen::Map<const RowMajor> Ym(Y.data(), static_cast<Eigen::Index>(m), t);

    Eigen::MatrixXd gram = Xm.transpose() * Xm;
    gram.diagonal().array() += lambda;

    Eigen::LDLT<Eigen::MatrixXd> factorization(gram);
    if (factorization.info() != Eigen::Success) {
        throw_config("normal equations are singular; use lambda > 0");
    }
    if (lambda == 0.0) {
        const auto& d = factorization.vectorD();
        const double max_pivot = d.maxCoeff();
        const double min_pivot = d.minCoeff();
        if (!(min_pivot > 0.0) || min_pivot <= 1e-12 * max_pivot) {
            throw_config("X'X is rank deficient with lambda = 0; use lambda > 0");
        }
    }

    Eigen::MatrixXd W = factorization.solve(Xm.transpose() * Ym);

    std::vector<double> weights(static_cast<std::size_t>(s) * static_cast<std::size_t>(t));
    for (int i = 0; i < s; ++i) {
        for (int j = 0; j < t; ++j) {
            const double w = W(i, j);
            if (!std::isfinite(w)) throw_config("ridge solve produced non-finite weights");
            weights[static_cast<std::size_t>(i) * static_cast<std::size_t>(t) +
                    static_cast<std::size_t>(j)] = w;
        }
    }
    return weights;
}

ProjectionModel fit_projection(const TrainingDictionary& dictionary,
                               const EmbeddingSpace& source_space,
                               const EmbeddingSpace& target_space, double lambda) {
    if (dictionary.m() == 0) throw_config("cannot fit projection: no usable dictionary pairs");
    if (!source_space.normalized() || !target_space.normalized()) {
        throw_config("fit_projection requires unit-normalized embedding spaces");
    }

    const std::size_t m = dictionary.m();
    const int s = source_space.dim();
    const int t = target_space.dim();

    std::vector<double> X(m * static_cast<std::size_t>(s));
    std::vector<double> Y(m * static_cast<std::size_t>(t));
    for (std::size_t r = 0; r < m; ++r) {
        const auto& pair = dictionary.pairs[r];
        auto xv = source_space.vector(pair.source);
        auto yv = target_space.vector(pair.target);
        for (int c = 0; c < s; ++c) X[r * s + c] = xv[static_cast<std::size_t>(c)];
        for (int c = 0; c < t; ++c) Y[r * t + c] = yv[static_cast<std::size_t>(c)];
    }

    std::vector<double> weights = solve_ridge(X, Y, m, s, t, lambda);

    // Training residual ||XW - Y||_F.
    double residual_sq = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        for (int j = 0; j < t; ++j) {
            double value = 0.0;
            for (int i = 0; i < s; ++i) {
                value += X[r * s + i] * weights[static_cast<std::size_t>(i) * t + j];
            }
            const double diff = value - Y[r * t + j];
            residual_sq += diff * diff;
        }
    }

    ProjectionModel model(s, t, lambda, std::move(weights));
    FitReport report;
    report.residual_frobenius = std::sqrt(residual_sq);
    report.m = m;
    report.source_dim = s;
    report.target_dim = t;
    model.set_fit_report(report);
    return model;
}

void save_model(const ProjectionModel& model, const std::filesystem::path& path) {
    std::string out;
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%d %d %.17g\n", model.source_dim(), model.target_dim(),
                  model.lambda());
    out += buffer;
    for (int i = 0; i < model.source_dim(); ++i) {
        for (int j = 0; j < model.target_dim(); ++j) {
            std::snprintf(buffer, sizeof(buffer), j ? " %.17g" : "%.17g", model.weight(i, j));
            out += buffer;
        }
        out.push_back('\n');
    }
    write_text_file(path, out);
}

ProjectionModel load_model(const std::filesystem::path& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line)) throw_parse(path.string() + ": empty model file");
    std::istringstream header(line);
    int s = 0;
    int t = 0;
    double lambda = 0.0;
    if (!(header >> s >> t >> lambda) || s < 1 || t < 1 || lambda < 0.0) {
        throw_parse(path.string() + ": bad model header, expected 's t lambda'");
    }
    std::vector<double> weights;
    weights.reserve(static_cast<std::size_t>(s) * static_cast<std::size_t>(t));
    for (int i = 0; i < s; ++i) {
        if (!std::getline(in, line)) {
            throw_parse(path.string() + ": truncated model, expected " + std::to_string(s) + " rows");
        }
        std::istringstream fields(line);
        for (int j = 0; j < t; ++j) {
            double w = 0.0;
            if (!(fields >> w)) {
                throw_parse(path.string() + ": row " + std::to_string(i) + " has fewer than " +
                            std::to_string(t) + " values");
            }
            if (!std::isfinite(w)) {
                throw_parse(path.string() + ": non-finite weight in row " + std::to_string(i));
            }
            weights.push_back(w);
        }
        std::string extra;
        if (fields >> extra) {
            throw_parse(path.string() + ": row " + std::to_string(i) + " has more than " +
                        std::to_string(t) + " values");
        }
    }
    return ProjectionModel(s, t, lambda, std::move(weights));
}

}  // namespace lexbridge
