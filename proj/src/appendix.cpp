#include "qrforce/appendix.hpp"

#include "qrforce/fixtures.hpp"
#include "qrforce/workers.hpp"

#include <chrono>
#include <cmath>

namespace qrf {

std::vector<AppendixBlock> appendix_blocks()
{
  std::vector<AppendixBlock> blocks;
  for (const auto &j : fixtures::appendix().at("blocks")) {
    AppendixBlock b;
    b.label = j.at("label").get<std::string>();
    b.family = j.at("family").get<std::string>();
    b.n = j.at("n").get<int>();
    for (std::size_t i = 0; i < 4; ++i) {
      b.perms[i] = parse_permutation(j.at("perms")[i].get<std::string>());
      b.signs.emplace_back(j.at("signs")[i].get<int>());
      b.gradients.push_back(parse_rational_vector(j.at("gradients")[i].get<std::vector<std::string>>()));
    }
    std::vector<RatVector> rows;
    for (const auto &r : j.at("hessian_combo"))
      rows.push_back(parse_rational_vector(r.get<std::vector<std::string>>()));
    b.hessian_combo = RatMatrix::from_rows(rows);
    b.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    blocks.push_back(std::move(b));
  }
  return blocks;
}

Inertia listed_inertia(const std::vector<double> &eigenvalues)
{
  Inertia in;
  for (double v : eigenvalues)
    (v > 0 ? in.n_pos : v < 0 ? in.n_neg : in.n_zero)++;
  return in;
}

Rational listed_hessian_scale()
{
  return Rational(1, 2);
}

AppendixItem verify_appendix_block(const AppendixBlock &b, double eigenvalue_tolerance)
{
  const auto start = std::chrono::steady_clock::now();
  AppendixItem item;
  item.label = b.label;
  item.n = b.n;
  const std::size_t dim = static_cast<std::size_t>((b.n - 1) * (b.n - 1));
  RatMatrix combo(dim, dim);
  for (std::size_t i = 0; i < 4; ++i) {
    auto d = h_derivatives_at_zero(b.perms[i], b.n);
    item.gradient_entries += b.gradients[i].size();
    if (b.gradients[i].size() != d.gradient.size()) {
      item.gradient_mismatches += b.gradients[i].size();
      item.first_mismatch = "gradient of " + b.perms[i].to_string() + " has the wrong length";
    } else {
      for (std::size_t t = 0; t < dim; ++t)
        if (d.gradient[t] != b.gradients[i][t]) {
          if (item.gradient_mismatches++ == 0)
            item.first_mismatch = "gradient " + b.perms[i].to_string() + "[" + std::to_string(t + 1) +
                                  "]: computed " + to_string(d.gradient[t]) + ", listed " +
                                  to_string(b.gradients[i][t]);
        }
    }
    combo += d.hessian.scaled(b.signs[i]);
  }
  combo = combo.scaled(listed_hessian_scale());
  item.hessian_entries = b.hessian_combo.rows() * b.hessian_combo.cols();
  if (b.hessian_combo.rows() != dim || b.hessian_combo.cols() != dim) {
    item.hessian_mismatches = item.hessian_entries;
  } else {
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        if (combo(i, j) != b.hessian_combo(i, j) && item.hessian_mismatches++ == 0 && item.first_mismatch.empty())
          item.first_mismatch = "Hessian (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                "): computed " + to_string(combo(i, j)) + ", listed " +
                                to_string(b.hessian_combo(i, j));
  }

  const auto spectrum = float_eigenvalues(combo);
  item.spectrum_ok = spectrum.size() == b.eigenvalues.size();
  if (item.spectrum_ok)
    for (std::size_t i = 0; i < spectrum.size(); ++i)
      item.max_eigenvalue_error = std::max(item.max_eigenvalue_error, std::abs(spectrum[i] - b.eigenvalues[i]));
  item.spectrum_ok = item.spectrum_ok && item.max_eigenvalue_error <= eigenvalue_tolerance;
  item.computed_inertia = inertia(combo);
  item.expected_inertia = listed_inertia(b.eigenvalues);
  item.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return item;
}

bool AppendixReport::ok() const
{
  for (const auto &i : items)
    if (!i.ok())
      return false;
  return !items.empty();
}

AppendixReport verify_appendix(double eigenvalue_tolerance, unsigned workers)
{
  const auto blocks = appendix_blocks();
  AppendixReport report;
  report.eigenvalue_tolerance = eigenvalue_tolerance;
  report.items.resize(blocks.size());
  parallel_for(
    blocks.size(), [&](std::size_t i) { report.items[i] = verify_appendix_block(blocks[i], eigenvalue_tolerance); },
    workers);
  return report;
}

} // namespace qrf
