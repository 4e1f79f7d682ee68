#include "muxreloc/equiv.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>

namespace muxreloc {

namespace {

std::vector<std::string> sorted_names(const Netlist& nl, const std::vector<NetId>& nets) {
  std::vector<std::string> names;
  names.reserve(nets.size());
  for (NetId n : nets) names.push_back(nl.net(n).name);
  std::sort(names.begin(), names.end());
  return names;
}

// Lane pattern of PI index i for exhaustive enumeration: vector v assigns
// bit (v >> i) & 1, packed 64 vectors per word.
uint64_t exhaustive_lane(int pi_index, uint64_t word) {
  static constexpr uint64_t kLow[6] = {
      0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
      0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull};
  if (pi_index < 6) return kLow[pi_index];
  return ((word >> (pi_index - 6)) & 1ull) ? ~0ull : 0ull;
}

}  // namespace

std::string EquivVerdict::describe() const {
  std::ostringstream out;
  switch (status) {
    case Status::Equal:
      out << "EQUAL";
      break;
    case Status::Counterexample:
      out << "COUNTEREXAMPLE";
      break;
    case Status::Inconclusive:
      out << "INCONCLUSIVE";
      break;
  }
  out << " (" << (mode == Mode::Exhaustive ? "exhaustive" : "random") << ", "
      << vectors_used << " vectors)";
  if (status == Status::Counterexample) {
    out << "\n ";
    for (const auto& [name, bit] : cex.pi_values) out << " " << name << "=" << (bit ? 1 : 0);
    out << "\n  PO " << cex.po_name << " differs: " << cex.value_a << " vs " << cex.value_b;
  }
  return out.str();
}

EquivVerdict equivalent(const Netlist& a, const Netlist& b, const EquivOptions& opts) {
  auto pi_names = sorted_names(a, a.primary_inputs());
  auto po_names = sorted_names(a, a.primary_outputs());
  if (pi_names != sorted_names(b, b.primary_inputs()))
    throw std::runtime_error("equivalent: primary input name sets differ");
  if (po_names != sorted_names(b, b.primary_outputs()))
    throw std::runtime_error("equivalent: primary output name sets differ");

  const int k = static_cast<int>(pi_names.size());
  EquivVerdict verdict;
  const bool exhaustive = k <= opts.exhaustive_limit;
  verdict.mode = exhaustive ? EquivVerdict::Mode::Exhaustive : EquivVerdict::Mode::Random;

  uint64_t nvectors, nwords;
  if (exhaustive) {
    nvectors = 1ull << k;
    nwords = std::max<uint64_t>(1, nvectors / 64);
  } else {
    nwords = (opts.random_vectors + 63) / 64;
    nvectors = nwords * 64;
  }

  // PI index per netlist, aligned by sorted name.
  auto index_of = [](const Netlist& nl, const std::vector<std::string>& names) {
    std::vector<size_t> idx(names.size());
    for (size_t i = 0; i < names.size(); ++i) {
      NetId n = *nl.find_net(names[i]);
      const auto& pis = nl.primary_inputs();
      idx[i] = std::find(pis.begin(), pis.end(), n) - pis.begin();
    }
    return idx;
  };
  auto pi_idx_a = index_of(a, pi_names);
  auto pi_idx_b = index_of(b, pi_names);
  auto po_index_of = [](const Netlist& nl, const std::vector<std::string>& names) {
    std::vector<size_t> idx(names.size());
    const auto& pos = nl.primary_outputs();
    for (size_t i = 0; i < names.size(); ++i)
      idx[i] = std::find(pos.begin(), pos.end(), *nl.find_net(names[i])) - pos.begin();
    return idx;
  };
  auto po_idx_a = po_index_of(a, po_names);
  auto po_idx_b = po_index_of(b, po_names);

  std::mt19937_64 rng(opts.seed);
  const uint64_t kBatch = 1024;  // words per simulation batch
  uint64_t done_words = 0;
  while (done_words < nwords) {
    uint64_t batch = std::min(kBatch, nwords - done_words);
    std::vector<std::vector<uint64_t>> lanes_a(a.primary_inputs().size(),
                                               std::vector<uint64_t>(batch, 0));
    std::vector<std::vector<uint64_t>> lanes_b(b.primary_inputs().size(),
                                               std::vector<uint64_t>(batch, 0));
    for (uint64_t w = 0; w < batch; ++w) {
      for (int i = 0; i < k; ++i) {
        uint64_t lane = exhaustive ? exhaustive_lane(i, done_words + w) : rng();
        lanes_a[pi_idx_a[i]][w] = lane;
        lanes_b[pi_idx_b[i]][w] = lane;
      }
    }
    auto out_a = simulate(a, lanes_a);
    auto out_b = simulate(b, lanes_b);
    uint64_t valid_tail = ~0ull;
    if (exhaustive && nvectors < 64) valid_tail = (1ull << nvectors) - 1;
    for (uint64_t w = 0; w < batch; ++w) {
      uint64_t mask = (exhaustive && done_words + w == nwords - 1) ? valid_tail : ~0ull;
      for (size_t p = 0; p < po_names.size(); ++p) {
        uint64_t diff = (out_a[po_idx_a[p]][w] ^ out_b[po_idx_b[p]][w]) & mask;
        if (diff == 0) continue;
        int bit = std::countr_zero(diff);
        verdict.status = EquivVerdict::Status::Counterexample;
        verdict.vectors_used = (done_words + w) * 64 + bit + 1;
        verdict.cex.po_name = po_names[p];
        verdict.cex.value_a = (out_a[po_idx_a[p]][w] >> bit) & 1;
        verdict.cex.value_b = (out_b[po_idx_b[p]][w] >> bit) & 1;
        for (int i = 0; i < k; ++i)
          verdict.cex.pi_values.emplace_back(pi_names[i],
                                             ((lanes_a[pi_idx_a[i]][w] >> bit) & 1) != 0);
        return verdict;
      }
    }
    done_words += batch;
  }
  verdict.status = EquivVerdict::Status::Equal;
  verdict.vectors_used = exhaustive ? nvectors : nwords * 64;
  return verdict;
}

}  // namespace muxreloc
