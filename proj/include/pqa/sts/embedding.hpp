/// @file embedding.hpp
/// @brief Text embeddings for semantic ranking.

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pqa/core/error.hpp"

namespace pqa::sts {

class DimMismatch : public Error {
public:
    using Error::Error;
};

/// Fixed-length real vector. Unit L2 norm when produced by an Embedder,
/// except the zero vector for text without tokens.
class EmbeddingVector {
public:
    EmbeddingVector() = default;
    explicit EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {}

    std::size_t dim() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }
    bool is_zero() const;
    double norm() const;

    friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

private:
    std::vector<double> values_;
};

/// Scales to unit L2 norm; the zero vector is returned unchanged.
EmbeddingVector l2_normalize(std::vector<double> values);

/// 64-bit FNV-1a over the bytes of `s`.
std::uint64_t fnv1a64(std::string_view s);

/// Signed feature hashing of normalized tokens: bucket = hash mod dim, sign
/// from bit 63 (set means -1), accumulated. Throws Error when dim < 8.
std::vector<double> hashed_counts(std::string_view text, std::size_t dim);

/// hashed_counts, L2-normalized.
EmbeddingVector embed_hashed_bow(std::string_view text, std::size_t dim);

/// Cosine similarity in [-1, 1]; 0 when either side is the zero vector.
/// Throws DimMismatch.
double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

class Embedder {
public:
    virtual ~Embedder() = default;
    virtual std::size_t dim() const = 0;
    virtual EmbeddingVector embed(std::string_view text) const = 0;
    virtual std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) const;
};

class HashedBowEmbedder final : public Embedder {
public:
    explicit HashedBowEmbedder(std::size_t dim);
    std::size_t dim() const override { return dim_; }
    EmbeddingVector embed(std::string_view text) const override;

private:
    std::size_t dim_;
};

}  // namespace pqa::sts
