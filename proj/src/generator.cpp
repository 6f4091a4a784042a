#include "revpref/generator.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>

namespace revpref {

namespace {

// Raw-engine sampling keeps output identical across standard libraries.
class Sampler {
 public:
  explicit Sampler(uint64_t seed) : engine_(seed) {}

  long integer(long lo, long hi) {
    return lo + static_cast<long>(engine_() % static_cast<uint64_t>(hi - lo + 1));
  }

  // Rational grid point in [lo, hi] with resolution (hi - lo) / 16.
  Rational in_range(const Rational& lo, const Rational& hi) {
    return lo + (hi - lo) * make_rational(integer(0, 16), 16);
  }

 private:
  std::mt19937_64 engine_;
};

PurchaseDataset generate_cobb_douglas(const GeneratorConfig& cfg, Sampler& rng) {
  const int goods = cfg.goods;
  std::vector<Rational> exponents(goods);
  Rational total = 0;
  for (Rational& a : exponents) {
    a = Rational(rng.integer(1, 5));
    total += a;
  }

  std::vector<Bundle> bundles;
  std::vector<PriceVector> prices;
  for (int t = 0; t < cfg.observations; ++t) {
    PriceVector p;
    p.prices.reserve(goods);
    for (int l = 0; l < goods; ++l) {
      Rational price = rng.in_range(cfg.price_min, cfg.price_max);
      if (price <= 0) price = cfg.price_min;
      p.prices.push_back(price);
    }
    const Rational income = rng.in_range(cfg.income_min, cfg.income_max);
    Bundle x;
    x.quantities.reserve(goods);
    for (int l = 0; l < goods; ++l) {
      // Exact demand for the monomial maximizer on the shrunk budget.
      x.quantities.push_back(exponents[l] / total * (cfg.efficiency * income) / p.prices[l]);
    }
    if (cfg.efficiency < 1) {
      const int dump = static_cast<int>(rng.integer(0, goods - 1));
      x.quantities[dump] += (1 - cfg.efficiency) * income / p.prices[dump];
    }
    bundles.push_back(std::move(x));
    prices.push_back(std::move(p));
  }
  return PurchaseDataset(std::move(bundles), std::move(prices));
}

PurchaseDataset generate_quasilinear(const GeneratorConfig& cfg, Sampler& rng) {
  const int goods = cfg.goods;
  // Separable quadratic value with bliss points above every price, so the
  // unconstrained per-good optimum is interior and exactly rational.
  std::vector<Rational> a(goods), b(goods);
  for (int l = 0; l < goods; ++l) {
    a[l] = cfg.price_max * Rational(rng.integer(2, 5));
    b[l] = Rational(rng.integer(1, 4));
  }
  std::vector<Bundle> bundles;
  std::vector<PriceVector> prices;
  for (int t = 0; t < cfg.observations; ++t) {
    PriceVector p;
    Bundle x;
    for (int l = 0; l < goods; ++l) {
      Rational price = rng.in_range(cfg.price_min, cfg.price_max);
      if (price <= 0) price = cfg.price_min;
      p.prices.push_back(price);
      Rational demand = (a[l] - price) / b[l];
      if (demand < 0) demand = 0;
      x.quantities.push_back(std::move(demand));
    }
    bundles.push_back(std::move(x));
    prices.push_back(std::move(p));
  }
  return PurchaseDataset(std::move(bundles), std::move(prices));
}

PurchaseDataset generate_discrete_divisible(const GeneratorConfig& cfg, Sampler& rng) {
  const int goods = cfg.goods;
  // Integer goods with a separable, not necessarily concave value; the
  // unobserved divisible good absorbs the rest of the budget at price q.
  std::vector<Rational> a(goods), curve(goods);
  for (int l = 0; l < goods; ++l) {
    a[l] = Rational(rng.integer(2, 12));
    curve[l] = Rational(rng.integer(0, 2));
  }

  std::vector<Bundle> bundles;
  std::vector<PriceVector> prices;
  for (int t = 0; t < cfg.observations; ++t) {
    PriceVector p;
    for (int l = 0; l < goods; ++l) {
      Rational price = rng.in_range(cfg.price_min, cfg.price_max);
      if (price <= 0) price = cfg.price_min;
      p.prices.push_back(price);
    }
    const Rational income = rng.in_range(cfg.income_min, cfg.income_max);
    const Rational q = make_rational(rng.integer(1, 6), 2);

    // Exhaustive exact maximization of value(x) + (income - p.x) / q over the
    // capped integer grid; ties resolve to the lexicographically smallest.
    std::vector<long> caps(goods);
    for (int l = 0; l < goods; ++l) {
      long cap = 0;
      while (cap < 5 && Rational(cap + 1) * p.prices[l] <= income) ++cap;
      caps[l] = cap;
    }
    std::vector<long> current(goods, 0), best_point(goods, 0);
    Rational best_value;
    bool have_best = false;
    const auto value_of = [&](const std::vector<long>& point) {
      Rational spent = 0, v = 0;
      for (int l = 0; l < goods; ++l) {
        spent += Rational(point[l]) * p.prices[l];
        v += a[l] * Rational(point[l]) - curve[l] * Rational(point[l] * (point[l] - 1)) / 2;
      }
      if (spent > income) return std::optional<Rational>();
      return std::optional<Rational>(v + (income - spent) / q);
    };
    const auto walk = [&](auto&& self, int l) -> void {
      if (l == goods) {
        if (auto v = value_of(current); v && (!have_best || *v > best_value)) {
          best_value = *v;
          best_point = current;
          have_best = true;
        }
        return;
      }
      for (long c = 0; c <= caps[l]; ++c) {
        current[l] = c;
        self(self, l + 1);
      }
      current[l] = 0;
    };
    walk(walk, 0);

    Bundle x;
    for (int l = 0; l < goods; ++l) x.quantities.push_back(Rational(best_point[l]));
    bundles.push_back(std::move(x));
    prices.push_back(std::move(p));
  }
  return PurchaseDataset(std::move(bundles), std::move(prices));
}

}  // namespace

PurchaseDataset generate(const GeneratorConfig& cfg) {
  if (cfg.goods < 1 || cfg.observations < 1)
    throw std::invalid_argument("need at least one good and one observation");
  if (cfg.efficiency <= 0 || cfg.efficiency > 1)
    throw std::invalid_argument("efficiency must lie in (0,1]");
  if (cfg.price_min <= 0 || cfg.price_max < cfg.price_min)
    throw std::invalid_argument("bad price range");
  if (cfg.income_min <= 0 || cfg.income_max < cfg.income_min)
    throw std::invalid_argument("bad income range");

  Sampler rng(cfg.seed);
  switch (cfg.family) {
    case UtilityFamily::cobb_douglas: return generate_cobb_douglas(cfg, rng);
    case UtilityFamily::quasilinear: return generate_quasilinear(cfg, rng);
    case UtilityFamily::discrete_divisible: return generate_discrete_divisible(cfg, rng);
  }
  throw std::invalid_argument("unknown utility family");
}

}  // namespace revpref
