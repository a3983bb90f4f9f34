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

#include "glyphkit/embedding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>

#include <Eigen/Eigenvalues>

#include "glyphkit/error.hpp"
#include "glyphkit/image_io.hpp"

namespace glyphkit {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};
constexpr std::size_t kHeaderSize = 12;
constexpr std::size_t kBlock = 64;

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::MalformedEntry, "embedding file: " + what);
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

void require_samples(const EmbeddingSet& set) {
  if (set.count < 2) {
    throw Error(ErrorCode::TooFewSamples,
                "need at least 2 samples, got " + std::to_string(set.count));
  }
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

std::vector<std::uint8_t> encode_embeddings(const EmbeddingSet& set) {
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  put_u32(out, static_cast<std::uint32_t>(set.count));
  put_u32(out, static_cast<std::uint32_t>(set.dim));
  out.reserve(kHeaderSize + set.data.size() * 4);
  for (float f : set.data) put_u32(out, std::bit_cast<std::uint32_t>(f));
  return out;
}

EmbeddingSet decode_embeddings(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderSize) malformed("shorter than the 12-byte header");
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) malformed("bad magic, expected EMB1");
  EmbeddingSet set;
  set.count = get_u32(bytes.data() + 4);
  set.dim = get_u32(bytes.data() + 8);
  const std::size_t expected = kHeaderSize + set.count * set.dim * 4;
  if (bytes.size() != expected) {
    malformed("expected " + std::to_string(expected) + " bytes, found " +
              std::to_string(bytes.size()));
  }
  set.data.resize(set.count * set.dim);
  for (std::size_t i = 0; i < set.data.size(); ++i) {
    const float f = std::bit_cast<float>(get_u32(bytes.data() + kHeaderSize + 4 * i));
    if (!std::isfinite(f)) malformed("non-finite value at row " + std::to_string(i / set.dim));
    set.data[i] = f;
  }
  return set;
}

EmbeddingSet read_embeddings(const std::filesystem::path& path) {
  return decode_embeddings(read_file(path));
}

void write_embeddings(const std::filesystem::path& path, const EmbeddingSet& set) {
  write_file(path, encode_embeddings(set));
}

ClipScores clip_score(const EmbeddingSet& image, const EmbeddingSet& text) {
  if (image.count != text.count || image.dim != text.dim) {
    throw Error(ErrorCode::DimensionMismatch,
                "image embeddings are " + std::to_string(image.count) + "x" +
                    std::to_string(image.dim) + ", text embeddings " +
                    std::to_string(text.count) + "x" + std::to_string(text.dim));
  }
  ClipScores out;
  out.per_case.reserve(image.count);
  double total = 0.0;
  for (std::size_t i = 0; i < image.count; ++i) {
    const auto a = image.row(i);
    const auto b = text.row(i);
    double dot = 0.0;
    double na = 0.0;
    double nb = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      dot += static_cast<double>(a[k]) * b[k];
      na += static_cast<double>(a[k]) * a[k];
      nb += static_cast<double>(b[k]) * b[k];
    }
    if (na == 0.0 || nb == 0.0) {
      throw Error(ErrorCode::ZeroVector, "row " + std::to_string(i) + " has zero norm");
    }
    const double score = 100.0 * dot / (std::sqrt(na) * std::sqrt(nb));
    out.per_case.push_back(score);
    total += score;
  }
  out.mean = image.count == 0 ? 0.0 : total / static_cast<double>(image.count);
  return out;
}

Eigen::VectorXd column_mean(const EmbeddingSet& set) {
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(set.dim));
  for (std::size_t i = 0; i < set.count; ++i) {
    const auto r = set.row(i);
    for (std::size_t k = 0; k < set.dim; ++k) mu[static_cast<Eigen::Index>(k)] += r[k];
  }
  if (set.count > 0) mu /= static_cast<double>(set.count);
  return mu;
}

Eigen::MatrixXd covariance_reference(const EmbeddingSet& set) {
  require_samples(set);
  const Eigen::VectorXd mu = column_mean(set);
  const auto d = static_cast<Eigen::Index>(set.dim);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
  std::vector<double> centered(set.dim);
  for (std::size_t i = 0; i < set.count; ++i) {
    const auto r = set.row(i);
    for (std::size_t k = 0; k < set.dim; ++k) centered[k] = r[k] - mu[static_cast<Eigen::Index>(k)];
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = a; b < d; ++b) c(a, b) += centered[a] * centered[b];
    }
  }
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a; b < d; ++b) {
      c(a, b) /= static_cast<double>(set.count - 1);
      c(b, a) = c(a, b);
    }
  }
  return c;
}

Eigen::MatrixXd covariance_blocked(const EmbeddingSet& set, int threads) {
  require_samples(set);
  const auto n = static_cast<Eigen::Index>(set.count);
  const auto d = static_cast<Eigen::Index>(set.dim);
  const Eigen::VectorXd mu = column_mean(set);
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = set.row(static_cast<std::size_t>(i));
    for (Eigen::Index k = 0; k < d; ++k) x(i, k) = r[static_cast<std::size_t>(k)] - mu[k];
  }

  // Upper-triangular column panels: panel j holds rows [0, j + w) of
  // columns [j, j + w). Each panel is one independent product.
  Eigen::MatrixXd c(d, d);
  const Eigen::Index panels = (d + kBlock - 1) / kBlock;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, threads))
#endif
  for (Eigen::Index p = 0; p < panels; ++p) {
    const Eigen::Index j = p * static_cast<Eigen::Index>(kBlock);
    const Eigen::Index w = std::min<Eigen::Index>(kBlock, d - j);
    c.block(0, j, j + w, w).noalias() = x.leftCols(j + w).transpose() * x.middleCols(j, w);
  }
  c.triangularView<Eigen::StrictlyLower>() = c.transpose();
  c /= static_cast<double>(n - 1);
  return c;
}

Eigen::MatrixXd matrix_sqrt_psd(const Eigen::MatrixXd& c) {
  if (c.rows() != c.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is " + std::to_string(c.rows()) + "x" +
                                                  std::to_string(c.cols()));
  }
  const double asym = max_abs(c - c.transpose());
  if (asym > 1e-8 * std::max(1.0, max_abs(c))) {
    throw Error(ErrorCode::NotSymmetric, "asymmetry " + std::to_string(asym) + " exceeds tolerance");
  }
  const Eigen::MatrixXd sym = 0.5 * (c + c.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
  Eigen::VectorXd lambda = eig.eigenvalues();
  const double scale = lambda.size() == 0 ? 0.0 : lambda.cwiseAbs().maxCoeff();
  if (lambda.size() > 0 && lambda.minCoeff() < -1e-8 * std::max(1.0, scale)) {
    throw Error(ErrorCode::IndefiniteBeyondTolerance,
                "eigenvalue " + std::to_string(lambda.minCoeff()) + " is negative beyond tolerance");
  }
  lambda = lambda.cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd& v = eig.eigenvectors();
  Eigen::MatrixXd s = v * lambda.asDiagonal() * v.transpose();
  return 0.5 * (s + s.transpose());
}

double fid(const EmbeddingSet& real, const EmbeddingSet& gen, const FidOptions& options) {
  require_samples(real);
  require_samples(gen);
  if (real.dim != gen.dim) {
    throw Error(ErrorCode::DimensionMismatch, "feature dimensions differ: " +
                                                  std::to_string(real.dim) + " vs " +
                                                  std::to_string(gen.dim));
  }
  const auto cov = [&](const EmbeddingSet& s) {
    return options.backend == CovarianceBackend::Reference ? covariance_reference(s)
                                                           : covariance_blocked(s, options.threads);
  };
  const Eigen::VectorXd mu1 = column_mean(real);
  const Eigen::VectorXd mu2 = column_mean(gen);
  const Eigen::MatrixXd c1 = cov(real);
  const Eigen::MatrixXd c2 = cov(gen);

  const Eigen::MatrixXd s1 = matrix_sqrt_psd(c1);
  Eigen::MatrixXd m = s1 * c2 * s1;
  m = 0.5 * (m + m.transpose());
  // Tr(M^1/2) is the sum of the square roots of M's eigenvalues; the same
  // tolerance as matrix_sqrt_psd applies before clamping.
  const Eigen::VectorXd lambda =
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues();
  const double scale = lambda.size() == 0 ? 0.0 : lambda.cwiseAbs().maxCoeff();
  if (lambda.size() > 0 && lambda.minCoeff() < -1e-8 * std::max(1.0, scale)) {
    throw Error(ErrorCode::IndefiniteBeyondTolerance, "sandwich product is indefinite");
  }
  const double tr_sqrt = lambda.cwiseMax(0.0).cwiseSqrt().sum();

  const double value = (mu1 - mu2).squaredNorm() + c1.trace() + c2.trace() - 2.0 * tr_sqrt;
  if (value < 0.0 && value >= -1e-6) return 0.0;
  return value;
}

}  // namespace glyphkit
