#include "pqa/sts/triplet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pqa::sts {
namespace {

struct SparseFeatures {
    std::vector<std::size_t> index;
    std::vector<double> value;
};

SparseFeatures features(std::string_view text, std::size_t dim) {
    const auto h = hashed_counts(text, dim);
    SparseFeatures out;
    for (std::size_t j = 0; j < dim; ++j) {
        if (h[j] != 0.0) {
            out.index.push_back(j);
            out.value.push_back(h[j]);
        }
    }
    return out;
}

std::vector<double> project(const Matrix& p, const SparseFeatures& x) {
    std::vector<double> u(p.rows(), 0.0);
    for (std::size_t k = 0; k < x.index.size(); ++k) {
        const std::size_t j = x.index[k];
        for (std::size_t r = 0; r < p.rows(); ++r) u[r] += p(r, j) * x.value[k];
    }
    return u;
}

double norm_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double squared_distance(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim()) throw DimMismatch("embedding dims differ inside a triplet");
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void check_batch(std::span<const Triplet> batch, double alpha) {
    if (batch.empty()) throw EmptyBatch("triplet batch is empty");
    if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw Error("alpha must be a finite value >= 0");
}

struct Forward {
    SparseFeatures x;
    std::vector<double> u;
    double norm = 0.0;
    std::vector<double> f;  // unit, or zero when u is zero
};

Forward forward(const Matrix& p, std::string_view text) {
    Forward out;
    out.x = features(text, p.cols());
    out.u = project(p, out.x);
    out.norm = norm_of(out.u);
    out.f = l2_normalize(out.u).values();
    return out;
}

/// Accumulates (d f / d P)^T g_f into grad.
void backprop(const Forward& fw, const std::vector<double>& g_f, Matrix& grad) {
    if (fw.norm == 0.0) return;
    double proj = 0.0;
    for (std::size_t i = 0; i < g_f.size(); ++i) proj += fw.f[i] * g_f[i];
    std::vector<double> g_u(g_f.size());
    for (std::size_t i = 0; i < g_f.size(); ++i) g_u[i] = (g_f[i] - fw.f[i] * proj) / fw.norm;
    for (std::size_t k = 0; k < fw.x.index.size(); ++k) {
        const std::size_t j = fw.x.index[k];
        for (std::size_t r = 0; r < g_u.size(); ++r) grad(r, j) += g_u[r] * fw.x.value[k];
    }
}

bool all_finite(const Matrix& m) {
    return std::all_of(m.data().begin(), m.data().end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

void Triplet::validate() const {
    if (query.empty() || positive.empty() || negative.empty()) {
        throw Error("triplet texts must be nonempty");
    }
}

LinearEmbedder::LinearEmbedder(std::size_t dim, double alpha)
    : LinearEmbedder(Matrix::identity(dim), alpha) {}

LinearEmbedder::LinearEmbedder(Matrix projection, double alpha)
    : projection_(std::move(projection)), alpha_(alpha) {
    if (projection_.rows() != projection_.cols()) throw Error("projection must be square");
    if (projection_.rows() < 8) throw Error("embedding dimension must be at least 8");
    if (!all_finite(projection_)) throw Error("projection has non-finite entries");
    if (!(alpha_ >= 0.0)) throw Error("alpha must be >= 0");
}

EmbeddingVector LinearEmbedder::embed(std::string_view text) const {
    return EmbeddingVector(forward(projection_, text).f);
}

Json LinearEmbedder::to_json() const {
    const std::size_t n = projection_.rows();
    Json columns = Json::array();
    for (std::size_t j = 0; j < n; ++j) {
        bool identity = true;
        for (std::size_t r = 0; r < n && identity; ++r) {
            identity = projection_(r, j) == (r == j ? 1.0 : 0.0);
        }
        if (identity) continue;
        Json values = Json::array();
        for (std::size_t r = 0; r < n; ++r) values.push_back(projection_(r, j));
        columns.push_back({{"index", j}, {"values", std::move(values)}});
    }
    return {{"dim", n}, {"alpha", alpha_}, {"columns", std::move(columns)}};
}

LinearEmbedder LinearEmbedder::from_json(const Json& j) {
    try {
        const auto n = j.at("dim").get<std::size_t>();
        Matrix p = Matrix::identity(n);
        for (const auto& col : j.at("columns")) {
            const auto idx = col.at("index").get<std::size_t>();
            const auto& values = col.at("values");
            if (idx >= n || values.size() != n) throw ParseError("projection column out of shape");
            for (std::size_t r = 0; r < n; ++r) p(r, idx) = values[r].get<double>();
        }
        return LinearEmbedder(std::move(p), j.at("alpha").get<double>());
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad embedder model: ") + e.what());
    }
}

double triplet_loss(const Embedder& embedder, std::span<const Triplet> batch, double alpha) {
    check_batch(batch, alpha);
    double total = 0.0;
    for (const auto& t : batch) {
        const auto q = embedder.embed(t.query);
        const auto p = embedder.embed(t.positive);
        const auto n = embedder.embed(t.negative);
        total += std::max(0.0, squared_distance(q, p) - squared_distance(q, n) + alpha);
    }
    return total;
}

Matrix triplet_loss_gradient(const LinearEmbedder& embedder, std::span<const Triplet> batch,
                             double alpha) {
    check_batch(batch, alpha);
    const Matrix& proj = embedder.projection();
    const std::size_t n = proj.rows();
    Matrix grad(n, n);
    std::vector<double> g(n);
    for (const auto& t : batch) {
        const auto fq = forward(proj, t.query);
        const auto fp = forward(proj, t.positive);
        const auto fn = forward(proj, t.negative);
        double dqp = 0.0, dqn = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dqp += (fq.f[i] - fp.f[i]) * (fq.f[i] - fp.f[i]);
            dqn += (fq.f[i] - fn.f[i]) * (fq.f[i] - fn.f[i]);
        }
        if (dqp - dqn + alpha <= 0.0) continue;

        for (std::size_t i = 0; i < n; ++i) g[i] = 2.0 * (fn.f[i] - fp.f[i]);
        backprop(fq, g, grad);
        for (std::size_t i = 0; i < n; ++i) g[i] = -2.0 * (fq.f[i] - fp.f[i]);
        backprop(fp, g, grad);
        for (std::size_t i = 0; i < n; ++i) g[i] = 2.0 * (fq.f[i] - fn.f[i]);
        backprop(fn, g, grad);
    }
    return grad;
}

LinearEmbedder train_triplet(std::span<const Triplet> triplets, const PipelineConfig& config,
                             const TripletTrainOptions& options, TripletTrainReport* report) {
    if (triplets.empty()) throw EmptyBatch("no training triplets");
    for (const auto& t : triplets) t.validate();
    const double alpha = config.alpha_margin;
    const double count = static_cast<double>(triplets.size());

    LinearEmbedder model(static_cast<std::size_t>(config.embedding_dim), alpha);
    auto mean_loss = [&](const LinearEmbedder& m) {
        const double loss = triplet_loss(m, triplets, alpha) / count;
        if (!std::isfinite(loss)) throw DivergenceError("triplet loss became non-finite");
        return loss;
    };

    double current = mean_loss(model);
    if (report) report->mean_loss = {current};

    double lr = options.learning_rate;
    for (int epoch = 0; epoch < options.epochs; ++epoch) {
        Matrix grad = triplet_loss_gradient(model, triplets, alpha);
        if (!all_finite(grad)) throw DivergenceError("triplet gradient became non-finite");
        const bool zero = std::all_of(grad.data().begin(), grad.data().end(),
                                      [](double v) { return v == 0.0; });
        if (zero) break;

        bool accepted = false;
        for (int attempt = 0; attempt <= options.max_backtracks; ++attempt) {
            Matrix next = model.projection();
            for (std::size_t i = 0; i < next.data().size(); ++i) {
                next.data()[i] -= lr * grad.data()[i] / count;
            }
            if (!all_finite(next)) throw DivergenceError("projection became non-finite");
            LinearEmbedder candidate(std::move(next), alpha);
            const double loss = mean_loss(candidate);
            if (loss <= current) {
                model = std::move(candidate);
                current = loss;
                accepted = true;
                break;
            }
            lr *= 0.5;
        }
        if (!accepted) break;
        if (report) report->mean_loss.push_back(current);
    }
    return model;
}

std::vector<Triplet> read_triplets(std::istream& in) {
    std::vector<Triplet> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const Json j = Json::parse(line);
            Triplet t{j.at("q").get<std::string>(), j.at("p").get<std::string>(),
                      j.at("n").get<std::string>()};
            t.validate();
            out.push_back(std::move(t));
        } catch (const std::exception& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace pqa::sts
