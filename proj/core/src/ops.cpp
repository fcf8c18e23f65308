#include "hcms/ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hcms/errors.hpp"

namespace hcms::ops {

namespace {

void require_rank(const Tensor& t, std::size_t rank, const char* what) {
  if (t.rank() != rank) {
    throw DimensionError(std::string(what) + " expects rank " + std::to_string(rank) + ", got " +
                         to_string(t.shape()));
  }
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* what) {
  if (a.shape() != b.shape()) {
    throw DimensionError(std::string(what) + ": shape mismatch " + to_string(a.shape()) + " vs " +
                         to_string(b.shape()));
  }
}

template <typename F>
Tensor map(const Tensor& x, F f) {
  Tensor out = Tensor::zeros_like(x);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = f(x[i]);
  return out;
}

}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_rank(a, 2, "matmul");
  require_rank(b, 2, "matmul");
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul: inner extents differ for " + to_string(a.shape()) + " and " +
                         to_string(b.shape()));
  }
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  Tensor out({m, n});
  for (std::size_t i = 0; i < m; ++i) {
    auto out_row = out.row(i);
    for (std::size_t p = 0; p < k; ++p) {
      const double aip = a.at(i, p);
      if (aip == 0.0) continue;
      auto b_row = b.row(p);
      for (std::size_t j = 0; j < n; ++j) out_row[j] += aip * b_row[j];
    }
  }
  return out;
}

MatmulGrads matmul_backward(const Tensor& a, const Tensor& b, const Tensor& d_out) {
  if (d_out.rank() != 2 || d_out.rows() != a.rows() || d_out.cols() != b.cols()) {
    throw DimensionError("matmul_backward: upstream gradient " + to_string(d_out.shape()) +
                         " does not match product of " + to_string(a.shape()) + " and " +
                         to_string(b.shape()));
  }
  const std::size_t m = a.rows(), k = a.cols(), n = b.cols();
  MatmulGrads g{Tensor::zeros_like(a), Tensor::zeros_like(b)};
  for (std::size_t i = 0; i < m; ++i) {
    auto d_row = d_out.row(i);
    for (std::size_t p = 0; p < k; ++p) {
      auto b_row = b.row(p);
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += d_row[j] * b_row[j];
      g.a.at(i, p) = acc;
      const double aip = a.at(i, p);
      auto gb_row = g.b.row(p);
      for (std::size_t j = 0; j < n; ++j) gb_row[j] += aip * d_row[j];
    }
  }
  return g;
}

namespace {

void check_conv_shapes(const Tensor& input, const Tensor& filters, std::size_t stride) {
  require_rank(input, 2, "conv1d input");
  require_rank(filters, 3, "conv1d filters");
  if (stride == 0) throw DimensionError("conv1d: stride must be positive");
  if (filters.dim(2) != input.cols()) {
    throw DimensionError("conv1d: filter depth " + to_string(filters.shape()) +
                         " does not match input " + to_string(input.shape()));
  }
  if (input.rows() < filters.dim(1)) {
    throw SequenceTooShortError("conv1d: sequence of length " + std::to_string(input.rows()) +
                                " is shorter than kernel width " + std::to_string(filters.dim(1)));
  }
}

}  // namespace

Tensor conv1d(const Tensor& input, const Tensor& filters, const Tensor& bias, std::size_t stride) {
  check_conv_shapes(input, filters, stride);
  const std::size_t f = filters.dim(0), k = filters.dim(1), d = filters.dim(2);
  if (bias.size() != f) {
    throw DimensionError("conv1d: bias " + to_string(bias.shape()) + " does not match " +
                         std::to_string(f) + " filters");
  }
  const std::size_t windows = (input.rows() - k) / stride + 1;
  Tensor out({windows, f});
  const auto in = input.values();
  const auto w = filters.values();
  // Each window of k consecutive rows is contiguous in row-major storage,
  // so a window-filter product is one dot product of length k*d.
  const std::size_t span_len = k * d;
  for (std::size_t t = 0; t < windows; ++t) {
    const double* window = in.data() + t * stride * d;
    for (std::size_t j = 0; j < f; ++j) {
      const double* filter = w.data() + j * span_len;
      double acc = bias[j];
      for (std::size_t q = 0; q < span_len; ++q) acc += window[q] * filter[q];
      out.at(t, j) = acc;
    }
  }
  return out;
}

Conv1dGrads conv1d_backward(const Tensor& input, const Tensor& filters, std::size_t stride,
                            const Tensor& d_out) {
  check_conv_shapes(input, filters, stride);
  const std::size_t f = filters.dim(0), k = filters.dim(1), d = filters.dim(2);
  const std::size_t windows = (input.rows() - k) / stride + 1;
  if (d_out.rank() != 2 || d_out.rows() != windows || d_out.cols() != f) {
    throw DimensionError("conv1d_backward: upstream gradient " + to_string(d_out.shape()) +
                         " expected [" + std::to_string(windows) + "x" + std::to_string(f) + "]");
  }
  Conv1dGrads g{Tensor::zeros_like(input), Tensor::zeros_like(filters), Tensor({f})};
  const auto in = input.values();
  const auto w = filters.values();
  auto gin = g.input.values();
  auto gw = g.filters.values();
  const std::size_t span_len = k * d;
  for (std::size_t t = 0; t < windows; ++t) {
    const std::size_t offset = t * stride * d;
    for (std::size_t j = 0; j < f; ++j) {
      const double up = d_out.at(t, j);
      if (up == 0.0) continue;
      g.bias[j] += up;
      const double* filter = w.data() + j * span_len;
      double* filter_grad = gw.data() + j * span_len;
      for (std::size_t q = 0; q < span_len; ++q) {
        filter_grad[q] += up * in[offset + q];
        gin[offset + q] += up * filter[q];
      }
    }
  }
  return g;
}

Tensor relu(const Tensor& x) {
  return map(x, [](double v) { return v > 0.0 ? v : 0.0; });
}

Tensor relu_backward(const Tensor& x, const Tensor& d_out) {
  require_same_shape(x, d_out, "relu_backward");
  Tensor g = Tensor::zeros_like(x);
  for (std::size_t i = 0; i < x.size(); ++i) g[i] = x[i] > 0.0 ? d_out[i] : 0.0;
  return g;
}

PoolResult maxpool1d(const Tensor& input, std::size_t pool, std::size_t stride) {
  require_rank(input, 2, "maxpool1d");
  if (pool == 0 || stride == 0) throw DimensionError("maxpool1d: pool and stride must be positive");
  if (input.rows() < pool) {
    throw SequenceTooShortError("maxpool1d: sequence of length " + std::to_string(input.rows()) +
                                " is shorter than pool size " + std::to_string(pool));
  }
  const std::size_t f = input.cols();
  const std::size_t windows = (input.rows() - pool) / stride + 1;
  PoolResult r{Tensor({windows, f}), std::vector<std::size_t>(windows * f)};
  for (std::size_t t = 0; t < windows; ++t) {
    for (std::size_t j = 0; j < f; ++j) {
      std::size_t best = t * stride * f + j;
      for (std::size_t p = 1; p < pool; ++p) {
        const std::size_t idx = (t * stride + p) * f + j;
        if (input[idx] > input[best]) best = idx;
      }
      r.output.at(t, j) = input[best];
      r.argmax[t * f + j] = best;
    }
  }
  return r;
}

Tensor maxpool1d_backward(const Shape& input_shape, std::span<const std::size_t> argmax,
                          const Tensor& d_out) {
  if (argmax.size() != d_out.size()) {
    throw DimensionError("maxpool1d_backward: " + std::to_string(argmax.size()) +
                         " routes for gradient " + to_string(d_out.shape()));
  }
  Tensor g(input_shape);
  for (std::size_t i = 0; i < argmax.size(); ++i) g[argmax[i]] += d_out[i];
  return g;
}

Tensor softmax(const Tensor& x) {
  const auto v = x.values();
  const double peak = *std::max_element(v.begin(), v.end());
  Tensor out = Tensor::zeros_like(x);
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::exp(x[i] - peak);
    total += out[i];
  }
  for (std::size_t i = 0; i < x.size(); ++i) out[i] /= total;
  return out;
}

Tensor softmax_backward(const Tensor& y, const Tensor& d_y) {
  require_same_shape(y, d_y, "softmax_backward");
  double dot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) dot += y[i] * d_y[i];
  Tensor g = Tensor::zeros_like(y);
  for (std::size_t i = 0; i < y.size(); ++i) g[i] = y[i] * (d_y[i] - dot);
  return g;
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "add");
  Tensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Tensor scale(const Tensor& x, double factor) {
  return map(x, [factor](double v) { return v * factor; });
}

Tensor tanh(const Tensor& x) {
  return map(x, [](double v) { return std::tanh(v); });
}

Tensor tanh_backward(const Tensor& y, const Tensor& d_out) {
  require_same_shape(y, d_out, "tanh_backward");
  Tensor g = Tensor::zeros_like(y);
  for (std::size_t i = 0; i < y.size(); ++i) g[i] = d_out[i] * (1.0 - y[i] * y[i]);
  return g;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

Tensor sigmoid(const Tensor& x) {
  return map(x, [](double v) { return sigmoid(v); });
}

Tensor sigmoid_backward(const Tensor& y, const Tensor& d_out) {
  require_same_shape(y, d_out, "sigmoid_backward");
  Tensor g = Tensor::zeros_like(y);
  for (std::size_t i = 0; i < y.size(); ++i) g[i] = d_out[i] * y[i] * (1.0 - y[i]);
  return g;
}

Tensor concat(std::span<const Tensor> parts) {
  if (parts.empty()) throw DimensionError("concat: no parts");
  std::vector<double> joined;
  for (const auto& p : parts) joined.insert(joined.end(), p.values().begin(), p.values().end());
  return Tensor::vector(std::move(joined));
}

std::vector<Tensor> concat_backward(std::span<const Shape> part_shapes, const Tensor& d_out) {
  std::size_t total = 0;
  for (const auto& s : part_shapes) total += element_count(s);
  if (total != d_out.size()) {
    throw DimensionError("concat_backward: segments cover " + std::to_string(total) +
                         " values but gradient is " + to_string(d_out.shape()));
  }
  std::vector<Tensor> grads;
  grads.reserve(part_shapes.size());
  std::size_t offset = 0;
  for (const auto& s : part_shapes) {
    const auto n = element_count(s);
    auto src = d_out.values().subspan(offset, n);
    grads.emplace_back(s, std::vector<double>(src.begin(), src.end()));
    offset += n;
  }
  return grads;
}

}  // namespace hcms::ops
