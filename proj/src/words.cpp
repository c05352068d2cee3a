#include "schottky/words.hpp"

#include <bit>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <limits>
#include <string>

#include "schottky/error.hpp"

namespace schottky {

SchottkyGroup::SchottkyGroup(std::vector<CirclePair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one generator");
  for (const auto& p : pairs_) {
    generators_.push_back(p.map);
    inverses_.push_back(p.map.inverse());
    fixed_.push_back(schottky::fixed_points(p.map));
  }
  validation_ = validate_schottky(pairs_);
}

SchottkyGroup SchottkyGroup::from_family(const FamilyParams& params) {
  return SchottkyGroup(family_circles(params));
}

const MoebiusMap& SchottkyGroup::letter(int tag) const {
  if (tag == 0 || std::abs(tag) > genus()) {
    throw Error(ErrorCode::InvalidArgument, "generator tag out of range");
  }
  return tag > 0 ? generators_[tag - 1] : inverses_[-tag - 1];
}

WordSet::WordSet(int genus, std::vector<std::vector<GroupWord>> by_length)
    : genus_(genus), by_length_(std::move(by_length)) {}

std::size_t WordSet::size() const {
  std::size_t n = 0;
  for (const auto& lvl : by_length_) n += lvl.size();
  return n;
}

std::uint64_t default_word_cap() {
  if (const char* env = std::getenv("SCHOTTKY_WORD_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return kDefaultWordCap;
}

std::uint64_t projected_word_count(int genus, int max_length) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  std::uint64_t level = 2ull * genus;
  for (int k = 1; k <= max_length; ++k) {
    if (total > kMax - level) return kMax;
    total += level;
    if (k < max_length) {
      if (level > kMax / (2ull * genus - 1)) return kMax;
      level *= 2ull * genus - 1;
    }
  }
  return total;
}

WordSet generate_words(const SchottkyGroup& group, int max_length, std::uint64_t cap) {
  if (max_length < 0) throw Error(ErrorCode::InvalidArgument, "word length must be >= 0");
  if (max_length > 255) throw Error(ErrorCode::DepthLimit, "word length exceeds 255");
  const int g = group.genus();
  const std::uint64_t projected = projected_word_count(g, max_length);
  if (projected > cap) {
    throw Error(ErrorCode::DepthLimit, "projected " + std::to_string(projected) +
                                           " words exceeds cap " + std::to_string(cap));
  }

  std::vector<std::vector<GroupWord>> levels;
  levels.reserve(max_length + 1);
  levels.push_back({GroupWord{}});
  for (int k = 1; k <= max_length; ++k) {
    const auto& prev = levels.back();
    std::vector<GroupWord> next;
    next.reserve(prev.size() * (k == 1 ? 2 * g : 2 * g - 1));
    for (const auto& w : prev) {
      for (int j = 1; j <= g; ++j) {
        for (int tag : {j, -j}) {
          if (w.last_tag == -tag) continue;
          GroupWord nw;
          nw.matrix = compose(w.matrix, group.letter(tag));
          nw.first_tag = static_cast<std::int8_t>(w.length == 0 ? tag : w.first_tag);
          nw.last_tag = static_cast<std::int8_t>(tag);
          nw.length = static_cast<std::uint8_t>(k);
          next.push_back(nw);
        }
      }
    }
    levels.push_back(std::move(next));
  }
  return WordSet(g, std::move(levels));
}

std::vector<GroupWord> coset_representatives(const WordSet& words, int n) {
  std::vector<GroupWord> out;
  words.for_each([&](const GroupWord& w) {
    if (is_coset_rep(w, n)) out.push_back(w);
  });
  return out;
}

std::vector<GroupWord> double_coset_representatives(const WordSet& words, int m, int n) {
  std::vector<GroupWord> out;
  words.for_each([&](const GroupWord& w) {
    if (is_double_coset_rep(w, m, n)) out.push_back(w);
  });
  return out;
}

namespace {

constexpr char kMagic[4] = {'S', 'K', 'W', 'S'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "word dumps are written in native little-endian order");

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw Error(ErrorCode::Io, "truncated word dump");
  return v;
}

}  // namespace

void write_wordset(const WordSet& words, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::Io, "cannot open " + path.string());
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(words.genus()));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(words.max_length()));
  put<std::uint64_t>(os, words.size());
  words.for_each([&](const GroupWord& w) {
    for (Complex e : {w.matrix.a(), w.matrix.b(), w.matrix.c(), w.matrix.d()}) {
      put(os, e.real());
      put(os, e.imag());
    }
    put(os, w.first_tag);
    put(os, w.last_tag);
    put(os, w.length);
  });
  if (!os) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

WordSet read_wordset(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::Io, "cannot open " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    throw Error(ErrorCode::Io, "not a word dump: " + path.string());
  }
  if (get<std::uint32_t>(is) != kVersion) throw Error(ErrorCode::Io, "unsupported dump version");
  const auto genus = static_cast<int>(get<std::uint32_t>(is));
  const auto max_length = static_cast<int>(get<std::uint32_t>(is));
  const auto count = get<std::uint64_t>(is);
  if (max_length > 255) throw Error(ErrorCode::Io, "corrupt word dump header");

  std::vector<std::vector<GroupWord>> levels(max_length + 1);
  for (std::uint64_t i = 0; i < count; ++i) {
    double v[8];
    for (double& x : v) x = get<double>(is);
    GroupWord w;
    w.matrix = MoebiusMap::from_unimodular({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]});
    w.first_tag = get<std::int8_t>(is);
    w.last_tag = get<std::int8_t>(is);
    w.length = get<std::uint8_t>(is);
    if (w.length > max_length) throw Error(ErrorCode::Io, "word longer than header max length");
    levels[w.length].push_back(w);
  }
  return WordSet(genus, std::move(levels));
}

}  // namespace schottky
