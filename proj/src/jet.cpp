#include "superapprox/jet.hpp"

#include <array>
#include <memory>
#include <stdexcept>

namespace superapprox {

namespace {

std::size_t encode(const MultiIndex& a, int base) {
  std::size_t key = 0;
  for (int i = 0; i < a.dim(); ++i) key = key * static_cast<std::size_t>(base) + static_cast<std::size_t>(a[i]);
  return key;
}

struct LayoutTable {
  std::array<std::array<JetLayout, kMaxJetOrder + 1>, kMaxJetDim> layouts;
  std::array<std::array<std::vector<std::uint32_t>, kMaxJetOrder + 1>, kMaxJetDim> lookup;

  LayoutTable() {
    for (int dim = 1; dim <= kMaxJetDim; ++dim) {
      for (int order = 0; order <= kMaxJetOrder; ++order) {
        JetLayout& L = layouts[dim - 1][order];
        L.dim = dim;
        L.order = order;
        L.indices = indices_up_to(dim, order);
        L.level_begin.push_back(0);
        for (std::size_t i = 0; i < L.indices.size(); ++i) {
          L.factorials.push_back(L.indices[i].factorial());
          if (i > 0 && L.indices[i].order() != L.indices[i - 1].order()) L.level_begin.push_back(i);
        }
        L.level_begin.push_back(L.indices.size());

        const int base = order + 1;
        std::size_t span = 1;
        for (int i = 0; i < dim; ++i) span *= static_cast<std::size_t>(base);
        auto& lk = lookup[dim - 1][order];
        lk.assign(span, UINT32_MAX);
        for (std::size_t i = 0; i < L.indices.size(); ++i) lk[encode(L.indices[i], base)] = static_cast<std::uint32_t>(i);

        for (std::size_t a = 0; a < L.indices.size(); ++a)
          for (std::size_t b = 0; b < L.indices.size(); ++b) {
            if (L.indices[a].order() + L.indices[b].order() > order) continue;
            const MultiIndex sum = L.indices[a] + L.indices[b];
            L.products.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), lk[encode(sum, base)]});
          }
      }
    }
  }
};

const LayoutTable& table() {
  static const LayoutTable t;
  return t;
}

}  // namespace

std::size_t JetLayout::index_of(const MultiIndex& alpha) const {
  if (alpha.dim() != dim || alpha.order() > order) throw std::out_of_range("multi-index outside jet layout");
  const auto& lk = table().lookup[dim - 1][order];
  return lk[encode(alpha, order + 1)];
}

const JetLayout& jet_layout(int dim, int order) {
  if (dim < 1 || dim > kMaxJetDim) throw std::invalid_argument("jet dimension outside 1..3");
  if (order < 0 || order > kMaxJetOrder) throw std::invalid_argument("jet order outside 0..12");
  return table().layouts[dim - 1][order];
}

Jet::Jet(int dim, int order) : layout_(&jet_layout(dim, order)), c_(layout_->size(), 0.0) {}

Jet::Jet(int dim, int order, std::vector<double> coefficients)
    : layout_(&jet_layout(dim, order)), c_(std::move(coefficients)) {
  if (c_.size() != layout_->size()) throw std::invalid_argument("jet coefficient count does not match layout");
}

Jet Jet::constant(int dim, int order, double value) {
  Jet j(dim, order);
  j.c_[0] = value;
  return j;
}

double Jet::derivative(const MultiIndex& alpha) const {
  const std::size_t i = layout_->index_of(alpha);
  return c_[i] * layout_->factorials[i];
}

Jet Jet::truncated(int order) const {
  if (order > this->order()) throw std::invalid_argument("cannot truncate a jet to a higher order");
  const JetLayout& L = jet_layout(dim(), order);
  return Jet(dim(), order, std::vector<double>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(L.size())));
}

Jet Jet::scaled(double factor) const {
  Jet out(*this);
  double f = 1.0;
  for (int r = 0; r <= order(); ++r) {
    for (std::size_t i = layout_->level_begin[r]; i < layout_->level_begin[r + 1]; ++i) out.c_[i] *= f;
    f *= factor;
  }
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  if (o.layout_ != layout_) throw std::invalid_argument("jet layout mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  if (o.layout_ != layout_) throw std::invalid_argument("jet layout mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("jet dimension mismatch");
  if (a.order() != b.order()) {
    const int o = std::min(a.order(), b.order());
    return a.truncated(o) * b.truncated(o);
  }
  Jet out(a.dim(), a.order());
  for (const auto& t : a.layout_->products) out.c_[t.c] += a.c_[t.a] * b.c_[t.b];
  return out;
}

Jet Jet::pow(int n) const {
  if (n < 0) throw std::invalid_argument("jet power must be non-negative");
  Jet out = Jet::constant(dim(), order(), 1.0);
  for (int i = 0; i < n; ++i) out = out * *this;
  return out;
}

bool Jet::operator==(const Jet& o) const { return layout_ == o.layout_ && c_ == o.c_; }

Jet tensor_product_jet(const std::vector<std::vector<double>>& factors, int order) {
  const int dim = static_cast<int>(factors.size());
  Jet out(dim, order);
  const JetLayout& L = out.layout();
  for (std::size_t i = 0; i < L.size(); ++i) {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= factors[static_cast<std::size_t>(d)][static_cast<std::size_t>(L.indices[i][d])];
    out[i] = v;
  }
  return out;
}

}  // namespace superapprox
