#include "brst/generator.hpp"

#include <algorithm>
#include <atomic>
#include <array>
#include <memory>
#include <stdexcept>
#include <vector>
#include <map>
#include <mutex>
#include <shared_mutex>

namespace brst {

std::string to_string(Bidegree b) {
  return "(" + std::to_string(b.form) + "," + std::to_string(b.ghost) + ")";
}

const char* to_string(GenKind k) {
  switch (k) {
    case GenKind::Differential: return "differential";
    case GenKind::Field: return "field";
    case GenKind::Inverse: return "inverse";
    case GenKind::Ghost: return "ghost";
    case GenKind::DiffeoGhost: return "diffeo-ghost";
  }
  return "?";
}

namespace {

// Append-only chunked table: readers index published chunks without locking.
constexpr std::size_t kChunkBits = 12;
constexpr std::size_t kChunk = std::size_t{1} << kChunkBits;
constexpr std::size_t kMaxChunks = 1 << 14;

struct Registry {
  std::shared_mutex mutex;
  std::array<std::atomic<Generator*>, kMaxChunks> chunks{};
  std::vector<std::unique_ptr<Generator[]>> owned;
  std::atomic<GenId> size{0};
  std::map<GeneratorKey, GenId> index;
};

Registry& registry() {
  static Registry r;
  return r;
}

std::atomic<int> g_truncation{4};

}  // namespace

GenId intern(const Generator& g) {
  auto& r = registry();
  {
    std::shared_lock lock(r.mutex);
    if (auto it = r.index.find(g.key); it != r.index.end()) return it->second;
  }
  std::unique_lock lock(r.mutex);
  if (auto it = r.index.find(g.key); it != r.index.end()) return it->second;
  GenId id = r.size.load(std::memory_order_relaxed);
  std::size_t c = id >> kChunkBits;
  if (c >= kMaxChunks) throw std::length_error("generator table full");
  if (!r.chunks[c].load(std::memory_order_relaxed)) {
    r.owned.emplace_back(new Generator[kChunk]);
    r.chunks[c].store(r.owned.back().get(), std::memory_order_release);
  }
  r.chunks[c].load(std::memory_order_relaxed)[id & (kChunk - 1)] = g;
  r.index.emplace(g.key, id);
  r.size.store(id + 1, std::memory_order_release);
  return id;
}

const Generator& generator(GenId id) {
  auto& r = registry();
  if (id >= r.size.load(std::memory_order_acquire)) throw std::out_of_range("unknown generator id");
  return r.chunks[id >> kChunkBits].load(std::memory_order_acquire)[id & (kChunk - 1)];
}

bool key_less(GenId a, GenId b) {
  if (a == b) return false;
  return generator(a).key < generator(b).key;
}

std::string render(GenId id) {
  const auto& g = generator(id);
  std::string out;
  if (g.key.kind == GenKind::Differential) {
    return "dx" + std::to_string(g.key.indices.at(0));
  }
  out = g.key.name;
  if (!g.key.indices.empty()) {
    out += '[';
    for (std::size_t i = 0; i < g.key.indices.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(g.key.indices[i]);
    }
    out += ']';
  }
  if (!g.key.jet.empty()) {
    out += "_{";
    for (int j : g.key.jet) out += std::to_string(j);
    out += '}';
  }
  return out;
}

int jet_truncation() { return g_truncation.load(); }

void set_jet_truncation(int order) {
  if (order < 1) throw std::invalid_argument("jet truncation must be >= 1");
  g_truncation.store(order);
}

static void check_jet(const GeneratorKey& key) {
  if (static_cast<int>(key.jet.size()) > jet_truncation()) {
    std::string name = key.name;
    for (int i : key.indices) name += "," + std::to_string(i);
    name += " jet order " + std::to_string(key.jet.size());
    throw JetOverflow(name);
  }
}

GenId dx(int mu) {
  return intern({{GenKind::Differential, "dx", {mu}, {}}, {1, 0}});
}

GenId field(const std::string& name, std::vector<int> indices,
            std::vector<int> jet) {
  std::sort(jet.begin(), jet.end());
  GeneratorKey key{GenKind::Field, name, std::move(indices), std::move(jet)};
  check_jet(key);
  return intern({std::move(key), {0, 0}});
}

GenId ghost(const std::string& name, std::vector<int> indices,
            std::vector<int> jet) {
  std::sort(jet.begin(), jet.end());
  GeneratorKey key{GenKind::Ghost, name, std::move(indices), std::move(jet)};
  check_jet(key);
  return intern({std::move(key), {0, 1}});
}

GenId xi(int mu, std::vector<int> jet) {
  std::sort(jet.begin(), jet.end());
  GeneratorKey key{GenKind::DiffeoGhost, "xi", {mu}, std::move(jet)};
  check_jet(key);
  return intern({std::move(key), {0, 1}});
}

GenId inverse_component(const std::string& name, std::vector<int> indices) {
  return intern({{GenKind::Inverse, name, std::move(indices), {}}, {0, 0}});
}

GenId prolong(GenId id, int mu) {
  const auto& g = generator(id);
  if (g.key.kind == GenKind::Differential || g.key.kind == GenKind::Inverse) {
    throw std::logic_error("cannot prolong " + render(id));
  }
  GeneratorKey key = g.key;
  key.jet.insert(std::upper_bound(key.jet.begin(), key.jet.end(), mu), mu);
  if (static_cast<int>(key.jet.size()) > jet_truncation()) {
    throw JetOverflow(render(id) + " (+d" + std::to_string(mu) + ")");
  }
  return intern({std::move(key), g.bidegree});
}

}  // namespace brst
