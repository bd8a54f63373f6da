#include "igpm/objectives.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <string>
#include <tuple>

#include "igpm/errors.hpp"
#include "igpm/io.hpp"
#include "igpm/random.hpp"

namespace igpm {

std::function<double(double)> Objective::along_ray(std::span<const double> x,
                                                   std::span<const double> d) const {
  require(x.size() == d.size(), "along_ray: dimension mismatch");
  return [this, x = std::vector<double>(x.begin(), x.end()),
          d = std::vector<double>(d.begin(), d.end())](double alpha) {
    std::vector<double> point(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) point[i] = x[i] + alpha * d[i];
    return value(point);
  };
}

namespace {

DenseVector residual(const ProblemInstance& inst, std::span<const double> x) {
  require(x.size() == inst.cols(), "objective: x has length " + std::to_string(x.size()) +
                                       ", expected " + std::to_string(inst.cols()));
  auto r = matvec(inst.a, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= inst.b[i];
  return r;
}

}  // namespace

double objective_value(const ProblemInstance& inst, std::span<const double> x) {
  const auto r = residual(inst, x);
  return 0.5 * dot(r, r);
}

DenseVector objective_gradient(const ProblemInstance& inst, std::span<const double> x) {
  return matvec_transpose(inst.a, residual(inst, x));
}

LeastSquares::LeastSquares(const ProblemInstance& inst) : inst_(&inst) {
  require(inst.b.size() == inst.rows(), "LeastSquares: b length differs from A rows");
}

std::size_t LeastSquares::dimension() const { return inst_->cols(); }

double LeastSquares::value(std::span<const double> x) const { return objective_value(*inst_, x); }

double LeastSquares::value_and_gradient(std::span<const double> x, DenseVector& gradient) const {
  const auto r = residual(*inst_, x);
  gradient = matvec_transpose(inst_->a, r);
  return 0.5 * dot(r, r);
}

std::function<double(double)> LeastSquares::along_ray(std::span<const double> x,
                                                      std::span<const double> d) const {
  auto r = residual(*inst_, x);
  auto ad = matvec(inst_->a, d);
  return [r = std::move(r), ad = std::move(ad)](double alpha) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double e = r[i] + alpha * ad[i];
      acc += e * e;
    }
    return 0.5 * acc;
  };
}

double power_method_lambda_max(const Matrix& a, double tol, std::size_t max_iters) {
  const std::size_t n = cols(a);
  require(n > 0 && rows(a) > 0, "power_method_lambda_max: empty matrix");
  require(tol > 0.0 && max_iters > 0, "power_method_lambda_max: bad tolerance or cap");
  DenseVector x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double lambda = 0.0;
  for (std::size_t it = 0; it < max_iters; ++it) {
    const auto ax = matvec(a, x);
    const double next = dot(ax, ax);
    auto w = matvec_transpose(a, ax);
    const double wn = norm2(w);
    if (wn == 0.0) {
      throw ContractViolation("power_method_lambda_max: AᵀA annihilates the iterate (zero matrix?)");
    }
    for (auto& wi : w) wi /= wn;
    x = std::move(w);
    const bool converged = it > 0 && std::abs(next - lambda) < tol * next;
    lambda = next;
    if (converged) break;
  }
  return lambda;
}

double lipschitz_estimate(const ProblemInstance& inst, double tol, std::size_t max_iters) {
  return kLipschitzSafetyFactor * power_method_lambda_max(inst.a, tol, max_iters);
}

double tau_for_preset(TauPreset preset, std::size_t n, std::size_t s) {
  require(s > 0 && s <= n, "tau_for_preset: need 0 < s <= n");
  switch (preset) {
    case TauPreset::paper:
      require(n > s, "tau_for_preset: paper preset needs s < n (tau = n - s)");
      return static_cast<double>(n - s);
    case TauPreset::tight:
      return static_cast<double>(s);
  }
  return static_cast<double>(s);
}

double default_density(std::size_t n, std::size_t m) {
  return static_cast<double>(n) / (1000.0 * static_cast<double>(m));
}

ProblemInstance generate_instance(const InstanceSpec& spec) {
  const auto [n, m, s] = std::tuple{spec.n, spec.m, spec.s};
  require(n >= 1 && m >= 1, "generate_instance: need m, n >= 1");
  require(s > 0 && s <= n, "generate_instance: need 0 < s <= n");
  Rng rng(spec.seed);

  // Partial Fisher–Yates picks the s nonzero positions.
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), std::size_t{0});
  for (std::size_t i = 0; i < s; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(positions[i], positions[j]);
  }
  DenseVector x_true(n);
  for (std::size_t i = 0; i < s; ++i) x_true[positions[i]] = rng.sign();

  ProblemInstance inst;
  if (spec.dense) {
    std::vector<double> entries(m * n);
    for (auto& e : entries) e = rng.normal();
    inst.a = DenseMatrix(m, n, std::move(entries));
  } else {
    const double density = spec.density.value_or(default_density(n, m));
    require(density > 0.0 && density <= 1.0, "generate_instance: density must lie in (0, 1]");
    // Geometric gaps between successive stored entries in row-major order
    // give each entry an independent Bernoulli(density) inclusion.
    const double log_q = std::log1p(-density);
    const std::size_t total = m * n;
    std::vector<std::size_t> row_starts(m + 1, 0);
    std::vector<std::size_t> col_indices;
    std::vector<double> values;
    std::size_t pos = 0;
    for (;;) {
      if (density < 1.0) {
        const double gap = std::floor(std::log(rng.uniform_open_closed()) / log_q);
        if (gap >= static_cast<double>(total - pos)) break;
        pos += static_cast<std::size_t>(gap);
      }
      if (pos >= total) break;
      double value = 0.0;
      while (value == 0.0) value = rng.normal();
      ++row_starts[pos / n + 1];
      col_indices.push_back(pos % n);
      values.push_back(value);
      ++pos;
    }
    std::partial_sum(row_starts.begin(), row_starts.end(), row_starts.begin());
    inst.a = SparseMatrixCSR(m, n, std::move(row_starts), std::move(col_indices),
                             std::move(values));
  }
  inst.b = matvec(inst.a, x_true);
  inst.tau = spec.tau.value_or(tau_for_preset(spec.tau_preset, n, s));
  require(inst.tau > 0.0, "generate_instance: tau must be positive");
  inst.x_true = std::move(x_true);
  inst.sparsity = s;
  inst.seed = spec.seed;
  return inst;
}

namespace {

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const char* suffix) {
  return std::filesystem::path(prefix.string() + suffix);
}

std::string exact_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ContractViolation("cannot open '" + path.string() + "' for reading");
  std::map<std::string, std::string> kv;
  std::string line;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ContractViolation(path.string() + ": expected key = value, got '" + line + "'");
    }
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace

void write_instance(const std::filesystem::path& prefix, const ProblemInstance& inst) {
  io::write_matrix_market(with_suffix(prefix, ".mtx"), inst.a);
  io::write_vector(with_suffix(prefix, ".b.txt"), inst.b);
  if (inst.x_true) io::write_vector(with_suffix(prefix, ".xtrue.txt"), *inst.x_true);
  std::ofstream meta(with_suffix(prefix, ".meta"));
  if (!meta) throw ContractViolation("cannot write instance metadata under " + prefix.string());
  meta << "n = " << inst.cols() << '\n'
       << "m = " << inst.rows() << '\n'
       << "tau = " << exact_real(inst.tau) << '\n'
       << "storage = " << (inst.dense() ? "dense" : "sparse") << '\n';
  if (inst.sparsity) meta << "s = " << *inst.sparsity << '\n';
  if (inst.seed) meta << "seed = " << *inst.seed << '\n';
}

ProblemInstance read_instance(const std::filesystem::path& prefix) {
  const auto kv = read_key_values(with_suffix(prefix, ".meta"));
  auto get = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ContractViolation("instance metadata: missing key '" + key + "'");
    return it->second;
  };
  ProblemInstance inst;
  auto sparse = io::read_matrix_market(with_suffix(prefix, ".mtx"));
  const auto n = std::stoull(get("n"));
  const auto m = std::stoull(get("m"));
  require(sparse.rows() == m && sparse.cols() == n, "instance metadata: shape mismatch");
  if (get("storage") == "dense") {
    inst.a = sparse.to_dense();
  } else {
    inst.a = std::move(sparse);
  }
  inst.b = io::read_vector(with_suffix(prefix, ".b.txt"));
  require(inst.b.size() == m, "instance: b length differs from m");
  inst.tau = std::stod(get("tau"));
  if (kv.contains("s")) inst.sparsity = std::stoull(kv.at("s"));
  if (kv.contains("seed")) inst.seed = std::stoull(kv.at("seed"));
  if (const auto xt = with_suffix(prefix, ".xtrue.txt"); std::filesystem::exists(xt)) {
    inst.x_true = io::read_vector(xt);
    require(inst.x_true->size() == n, "instance: x_true length differs from n");
  }
  return inst;
}

}  // namespace igpm
