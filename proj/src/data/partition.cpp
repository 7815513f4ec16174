#include "fedfraud/data/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace fedfraud {

namespace {

// Sizes for `n` items over `k` bins, differing by at most one (larger bins first).
std::vector<std::size_t> even_sizes(std::size_t n, std::size_t k) {
  std::vector<std::size_t> sizes(k, n / k);
  for (std::size_t i = 0; i < n % k; ++i) ++sizes[i];
  return sizes;
}

std::vector<std::size_t> dirichlet_sizes(std::size_t n, std::size_t k, double alpha, Rng& rng) {
  const auto proportions = rng_dirichlet(rng, k, alpha);
  const std::size_t spare = n - k;
  std::vector<std::size_t> sizes(k, 1);
  std::vector<double> remainder(k);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const double exact = proportions[i] * static_cast<double>(spare);
    const auto whole = static_cast<std::size_t>(std::floor(exact));
    sizes[i] += whole;
    assigned += whole;
    remainder[i] = exact - static_cast<double>(whole);
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < spare; ++i, ++assigned) ++sizes[order[i % k]];
  return sizes;
}

std::vector<ClientShard> build_shards(const Dataset& train,
                                      const std::vector<std::vector<std::size_t>>& rows) {
  std::vector<ClientShard> shards;
  shards.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    shards.push_back({i + 1, train.subset(rows[i])});
  }
  return shards;
}

}  // namespace

PartitionKind parse_partition_kind(std::string_view name) {
  if (name == "iid") return PartitionKind::iid;
  if (name == "quantity_skew") return PartitionKind::quantity_skew;
  if (name == "label_skew") return PartitionKind::label_skew;
  throw DomainError("unknown partition scheme '" + std::string(name) + "'");
}

std::string_view to_string(PartitionKind kind) noexcept {
  switch (kind) {
    case PartitionKind::iid: return "iid";
    case PartitionKind::quantity_skew: return "quantity_skew";
    case PartitionKind::label_skew: return "label_skew";
  }
  return "unknown";
}

std::vector<ClientShard> partition(const Dataset& train, std::size_t k,
                                   const PartitionScheme& scheme, Rng& rng) {
  if (k == 0) throw DomainError("partition: client count must be at least 1");
  if (k > train.size()) {
    throw DomainError("partition: " + std::to_string(k) + " clients but only " +
                      std::to_string(train.size()) + " rows");
  }
  if (k == 1) return {ClientShard{1, train}};

  std::vector<std::vector<std::size_t>> rows(k);

  switch (scheme.kind) {
    case PartitionKind::iid:
    case PartitionKind::quantity_skew: {
      const auto sizes = scheme.kind == PartitionKind::iid
                             ? even_sizes(train.size(), k)
                             : dirichlet_sizes(train.size(), k, scheme.dirichlet_alpha, rng);
      const auto perm = rng_shuffle(rng, train.size());
      std::size_t offset = 0;
      for (std::size_t c = 0; c < k; ++c) {
        rows[c].assign(perm.begin() + static_cast<std::ptrdiff_t>(offset),
                       perm.begin() + static_cast<std::ptrdiff_t>(offset + sizes[c]));
        offset += sizes[c];
      }
      break;
    }
    case PartitionKind::label_skew: {
      if (!(scheme.fraud_concentration >= 0.0 && scheme.fraud_concentration <= 1.0)) {
        throw DomainError("partition: fraud_concentration must lie in [0, 1]");
      }
      auto legit = positions_with_label(train, 0);
      auto fraud = positions_with_label(train, 1);
      shuffle_in_place(rng, legit);
      shuffle_in_place(rng, fraud);

      const auto legit_sizes = even_sizes(legit.size(), k);
      std::size_t offset = 0;
      for (std::size_t c = 0; c < k; ++c) {
        rows[c].assign(legit.begin() + static_cast<std::ptrdiff_t>(offset),
                       legit.begin() + static_cast<std::ptrdiff_t>(offset + legit_sizes[c]));
        offset += legit_sizes[c];
      }

      const std::size_t hot = (k + 1) / 2;
      const auto concentrated = static_cast<std::size_t>(
          std::llround(scheme.fraud_concentration * static_cast<double>(fraud.size())));
      for (std::size_t i = 0; i < fraud.size(); ++i) {
        const std::size_t c = i < concentrated ? i % hot : hot + (i - concentrated) % (k - hot);
        rows[c].push_back(fraud[i]);
      }
      for (auto& r : rows) shuffle_in_place(rng, r);
      break;
    }
  }
  return build_shards(train, rows);
}

}  // namespace fedfraud
