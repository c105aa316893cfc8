#include "pqa/sts/embedding.hpp"

#include <algorithm>
#include <cmath>

#include "pqa/core/text.hpp"

namespace pqa::sts {

bool EmbeddingVector::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double EmbeddingVector::norm() const {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return std::sqrt(s);
}

EmbeddingVector l2_normalize(std::vector<double> values) {
    double s = 0.0;
    for (double v : values) s += v * v;
    if (s > 0.0) {
        const double inv = 1.0 / std::sqrt(s);
        for (double& v : values) v *= inv;
    }
    return EmbeddingVector(std::move(values));
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::vector<double> hashed_counts(std::string_view text, std::size_t dim) {
    if (dim < 8) throw Error("embedding dimension must be at least 8");
    std::vector<double> v(dim, 0.0);
    for (const auto& token : tokenize(text)) {
        const std::uint64_t h = fnv1a64(token);
        v[h % dim] += (h >> 63) ? -1.0 : 1.0;
    }
    return v;
}

EmbeddingVector embed_hashed_bow(std::string_view text, std::size_t dim) {
    return l2_normalize(hashed_counts(text, dim));
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dim() != b.dim()) {
        throw DimMismatch("cannot compare dims " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
    }
    const double na = a.norm();
    const double nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    double dot = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) dot += a[i] * b[i];
    return std::clamp(dot / (na * nb), -1.0, 1.0);
}

std::vector<EmbeddingVector> Embedder::embed_batch(std::span<const std::string> texts) const {
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embed(t));
    return out;
}

HashedBowEmbedder::HashedBowEmbedder(std::size_t dim) : dim_(dim) {
    if (dim < 8) throw Error("embedding dimension must be at least 8");
}

EmbeddingVector HashedBowEmbedder::embed(std::string_view text) const {
    return embed_hashed_bow(text, dim_);
}

}  // namespace pqa::sts
