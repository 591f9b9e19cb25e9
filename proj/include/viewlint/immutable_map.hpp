//===- immutable_map.hpp - Copy-on-write ordered map ------------*- C++ -*-===//
//
// Value-semantics map used for every ProgramState component. Copies share the
// underlying tree until one side is modified.
//
//===----------------------------------------------------------------------===//

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>

namespace viewlint {

template <typename K, typename V> class ImmutableMap {
public:
  using Map = std::map<K, V>;

  ImmutableMap() = default;

  const V *lookup(const K &Key) const {
    if (!M)
      return nullptr;
    auto It = M->find(Key);
    return It == M->end() ? nullptr : &It->second;
  }
  bool contains(const K &Key) const { return lookup(Key) != nullptr; }

  [[nodiscard]] ImmutableMap set(const K &Key, V Value) const {
    if (const V *Old = lookup(Key); Old && *Old == Value)
      return *this;
    auto Copy = M ? std::make_shared<Map>(*M) : std::make_shared<Map>();
    (*Copy)[Key] = std::move(Value);
    return ImmutableMap(std::move(Copy));
  }

  [[nodiscard]] ImmutableMap erase(const K &Key) const {
    if (!contains(Key))
      return *this;
    auto Copy = std::make_shared<Map>(*M);
    Copy->erase(Key);
    return ImmutableMap(std::move(Copy));
  }

  /// Removes every entry for which \p Pred holds.
  template <typename Pred> [[nodiscard]] ImmutableMap eraseIf(Pred P) const {
    if (!M)
      return *this;
    bool Any = false;
    for (const auto &[Key, Value] : *M)
      if (P(Key, Value)) {
        Any = true;
        break;
      }
    if (!Any)
      return *this;
    auto Copy = std::make_shared<Map>();
    for (const auto &[Key, Value] : *M)
      if (!P(Key, Value))
        Copy->emplace(Key, Value);
    return ImmutableMap(std::move(Copy));
  }

  std::size_t size() const { return M ? M->size() : 0; }
  bool empty() const { return size() == 0; }

  typename Map::const_iterator begin() const { return M ? M->begin() : empty_().begin(); }
  typename Map::const_iterator end() const { return M ? M->end() : empty_().end(); }

  friend bool operator==(const ImmutableMap &A, const ImmutableMap &B) {
    if (A.M == B.M)
      return true;
    if (A.size() != B.size())
      return false;
    if (A.empty())
      return true;
    return *A.M == *B.M;
  }

private:
  explicit ImmutableMap(std::shared_ptr<const Map> P) : M(std::move(P)) {}
  static const Map &empty_() {
    static const Map E;
    return E;
  }

  std::shared_ptr<const Map> M;
};

inline std::size_t hashCombine(std::size_t Seed, std::size_t V) {
  return Seed ^ (V + 0x9e3779b97f4a7c15ULL + (Seed << 6) + (Seed >> 2));
}

} // namespace viewlint
