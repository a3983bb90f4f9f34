// Copyright 2026 The glyphkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Feature embeddings supplied by external encoders, and the two
// distribution-level metrics computed from them: CLIP score (paired cosine)
// and the Frechet distance between Gaussian fits (FID).
//
// Covariances come in two implementations with the same contract: a plain
// serial loop kept as the reference, and a blocked Eigen product split over
// OpenMP threads. Both use the unbiased n-1 divisor.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace glyphkit {

struct EmbeddingSet {
  std::size_t count = 0;
  std::size_t dim = 0;
  std::vector<float> data;  // row-major count x dim

  std::span<const float> row(std::size_t i) const {
    return std::span<const float>(data).subspan(i * dim, dim);
  }
};

/// Binary layout: "EMB1", u32 LE count, u32 LE dim, count*dim f32 LE.
/// Decoding throws MalformedEntry for a bad header, truncated payload,
/// trailing bytes, or non-finite values.
std::vector<std::uint8_t> encode_embeddings(const EmbeddingSet& set);
EmbeddingSet decode_embeddings(std::span<const std::uint8_t> bytes);
EmbeddingSet read_embeddings(const std::filesystem::path& path);
void write_embeddings(const std::filesystem::path& path, const EmbeddingSet& set);

struct ClipScores {
  std::vector<double> per_case;
  double mean = 0.0;
};

/// 100 * cosine for each row pair, unclamped. Throws DimensionMismatch
/// (count or dim differ) and ZeroVector (naming the row).
ClipScores clip_score(const EmbeddingSet& image, const EmbeddingSet& text);

enum class CovarianceBackend { Blocked, Reference };

struct FidOptions {
  int threads = 1;
  CovarianceBackend backend = CovarianceBackend::Blocked;
};

Eigen::VectorXd column_mean(const EmbeddingSet& set);

/// Unbiased covariance; requires count >= 2 (TooFewSamples).
Eigen::MatrixXd covariance_reference(const EmbeddingSet& set);
Eigen::MatrixXd covariance_blocked(const EmbeddingSet& set, int threads);

/// Symmetric PSD square root by eigendecomposition with eigenvalues clamped
/// at zero. Throws NotSymmetric when max|C - C^T| > 1e-8 * max(1, max|C|),
/// IndefiniteBeyondTolerance when an eigenvalue is below
/// -1e-8 * max(1, max|lambda|).
Eigen::MatrixXd matrix_sqrt_psd(const Eigen::MatrixXd& c);

/// Frechet distance between the Gaussian fits of two sets, with the trace
/// term evaluated as Tr((C1^1/2 C2 C1^1/2)^1/2). Throws TooFewSamples and
/// DimensionMismatch.
double fid(const EmbeddingSet& real, const EmbeddingSet& gen, const FidOptions& options = {});

}  // namespace glyphkit
