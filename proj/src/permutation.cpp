#include "qrforce/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace qrf {

Permutation::Permutation(std::vector<int> image)
: image_(std::move(image))
{
  const int k = size();
  std::vector<bool> seen(k + 1, false);
  for (int v : image_) {
    if (v < 1 || v > k)
      throw std::invalid_argument("permutation value " + std::to_string(v) + " out of range 1.." +
                                  std::to_string(k));
    if (seen[v])
      throw std::invalid_argument("permutation value " + std::to_string(v) + " repeated");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int k)
{
  std::vector<int> v(k);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const
{
  std::vector<int> v(image_.size());
  for (int i = 0; i < size(); ++i)
    v[image_[i] - 1] = i + 1;
  return Permutation(std::move(v));
}

Permutation Permutation::reverse() const
{
  return Permutation(std::vector<int>(image_.rbegin(), image_.rend()));
}

Permutation Permutation::complement() const
{
  std::vector<int> v(image_);
  for (int &x : v)
    x = size() + 1 - x;
  return Permutation(std::move(v));
}

std::string Permutation::to_string() const
{
  std::string s;
  const bool digits = size() <= 9;
  for (int i = 0; i < size(); ++i) {
    if (!digits && i > 0)
      s += ',';
    s += std::to_string(image_[i]);
  }
  return s;
}

Permutation parse_permutation(std::string_view text)
{
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s += c;
  if (s.empty())
    throw ParseError("empty permutation");

  std::vector<int> values;
  if (s.find(',') != std::string::npos) {
    std::size_t start = 0;
    while (start <= s.size()) {
      std::size_t end = s.find(',', start);
      if (end == std::string::npos)
        end = s.size();
      std::string token = s.substr(start, end - start);
      if (token.empty() || !std::all_of(token.begin(), token.end(), ::isdigit) || token.size() > 6)
        throw ParseError("invalid permutation token '" + token + "'");
      values.push_back(std::stoi(token));
      start = end + 1;
    }
  } else {
    for (char c : s) {
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw ParseError(std::string("invalid permutation token '") + c + "'");
      values.push_back(c - '0');
    }
  }

  const int k = static_cast<int>(values.size());
  std::vector<bool> seen(k + 1, false);
  for (int v : values) {
    if (v < 1 || v > k)
      throw ParseError("permutation token '" + std::to_string(v) + "' out of range 1.." +
                       std::to_string(k));
    if (seen[v])
      throw ParseError("permutation token '" + std::to_string(v) + "' repeated");
    seen[v] = true;
  }
  return Permutation(std::move(values));
}

std::vector<Permutation> parse_permutation_list(std::string_view text)
{
  std::vector<Permutation> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos)
      end = text.size();
    out.push_back(parse_permutation(text.substr(start, end - start)));
    start = end + 1;
  }
  return out;
}

Permutation pattern_of(const std::vector<int> &values)
{
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return values[a] < values[b]; });
  std::vector<int> image(values.size());
  for (std::size_t r = 0; r < order.size(); ++r)
    image[order[r]] = static_cast<int>(r) + 1;
  return Permutation(std::move(image));
}

Permutation subpermutation(const Permutation &pi, const std::vector<int> &positions)
{
  if (positions.empty())
    throw std::invalid_argument("subpermutation: empty index set");
  std::vector<int> values;
  values.reserve(positions.size());
  int prev = 0;
  for (int p : positions) {
    if (p < 1 || p > pi.size())
      throw std::invalid_argument("subpermutation: index " + std::to_string(p) + " out of range");
    if (p <= prev)
      throw std::invalid_argument("subpermutation: indices must be strictly increasing");
    prev = p;
    values.push_back(pi(p));
  }
  return pattern_of(values);
}

Rational pattern_density_perm(const Permutation &sigma, const Permutation &pi)
{
  const int m = sigma.size();
  const int k = pi.size();
  if (m > k)
    return 0;
  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 1);
  Integer hits = 0;
  std::vector<int> values(m);
  while (true) {
    for (int i = 0; i < m; ++i)
      values[i] = pi(idx[i]);
    bool match = true;
    for (int i = 0; i < m && match; ++i)
      for (int j = i + 1; j < m && match; ++j)
        match = (values[i] < values[j]) == (sigma.image()[i] < sigma.image()[j]);
    if (match)
      ++hits;
    int i = m - 1;
    while (i >= 0 && idx[i] == k - (m - 1 - i))
      --i;
    if (i < 0)
      break;
    ++idx[i];
    for (int j = i + 1; j < m; ++j)
      idx[j] = idx[j - 1] + 1;
  }
  Rational d(hits, binomial(k, m));
  d.canonicalize();
  return d;
}

PermMatrix permutation_matrix(const Permutation &pi)
{
  PermMatrix a{pi.size(), std::vector<std::uint8_t>(pi.size() * pi.size(), 0)};
  for (int i = 1; i <= pi.size(); ++i)
    a.entries[(i - 1) * a.k + (pi(i) - 1)] = 1;
  return a;
}

Permutation apply(Symmetry g, const Permutation &pi)
{
  switch (g) {
  case Symmetry::identity:
    return pi;
  case Symmetry::reverse:
    return pi.reverse();
  case Symmetry::complement:
    return pi.complement();
  case Symmetry::inverse:
    return pi.inverse();
  case Symmetry::rotate180:
    return pi.complement().reverse();
  case Symmetry::rotate90:
    return pi.inverse().reverse();
  case Symmetry::rotate270:
    return pi.reverse().inverse();
  case Symmetry::antitranspose:
    return pi.inverse().complement().reverse();
  }
  throw std::logic_error("unknown symmetry");
}

std::string_view symmetry_name(Symmetry g)
{
  switch (g) {
  case Symmetry::identity:
    return "identity";
  case Symmetry::reverse:
    return "reverse";
  case Symmetry::complement:
    return "complement";
  case Symmetry::inverse:
    return "inverse";
  case Symmetry::rotate180:
    return "rotate180";
  case Symmetry::rotate90:
    return "rotate90";
  case Symmetry::rotate270:
    return "rotate270";
  case Symmetry::antitranspose:
    return "antitranspose";
  }
  return "?";
}

std::set<PermSet> dihedral_orbit(const PermSet &pis)
{
  if (!pis.empty()) {
    const int k = pis.begin()->size();
    for (const auto &p : pis)
      if (p.size() != k)
        throw std::invalid_argument("dihedral_orbit: permutations of mixed sizes");
  }
  std::set<PermSet> orbit;
  for (Symmetry g : all_symmetries) {
    PermSet image;
    for (const auto &p : pis)
      image.insert(apply(g, p));
    orbit.insert(std::move(image));
  }
  return orbit;
}

std::vector<Permutation> enumerate_Sk(int k)
{
  if (k < 1 || k > 8)
    throw std::invalid_argument("enumerate_Sk: k must be in 1..8");
  std::vector<int> v(k);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do
    out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

} // namespace qrf
