#pragma once

#include <deque>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "notears/syntax.hpp"
#include "notears/value.hpp"

namespace notears {

// One checked top-level declaration. Terms are core and fully elaborated;
// values are cached eagerly so definitions unfold by pointer lookup.
struct Entry {
  std::string name;
  bool isAxiom = false;
  TermPtr type;
  TermPtr body;  // null for axioms
  ValuePtr typeValue;
  ValuePtr bodyValue;  // null for axioms
  std::set<std::string> deps;  // constants referenced by type or body
  std::string file;
  Span span;
};

inline void collect_consts(const TermPtr& t, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == Tm::Const) out.insert(t->name);
  for (const auto& k : t->kids) collect_consts(k, out);
}

// Immutable snapshot of checked declarations. extended() shares the tail with
// the parent, so snapshots captured by closures stay valid and cheap.
class GlobalEnv {
 public:
  GlobalEnv()
      : order_(std::make_shared<std::vector<EntryPtr>>()),
        byName_(std::make_shared<EntryMap>()) {}

  const EntryPtr* find(const std::string& name) const {
    auto it = byName_->find(name);
    return it == byName_->end() ? nullptr : &it->second;
  }
  bool contains(const std::string& name) const { return byName_->count(name) > 0; }

  GlobalEnv extended(EntryPtr entry) const {
    GlobalEnv next;
    auto order = std::make_shared<std::vector<EntryPtr>>(*order_);
    auto map = std::make_shared<EntryMap>(*byName_);
    (*map)[entry->name] = entry;
    order->push_back(std::move(entry));
    next.order_ = std::move(order);
    next.byName_ = std::move(map);
    return next;
  }

  const std::vector<EntryPtr>& entries() const { return *order_; }
  GlobalsPtr map() const { return byName_; }

  std::set<std::string> names() const {
    std::set<std::string> out;
    for (const auto& [k, v] : *byName_) out.insert(k);
    return out;
  }

  // Every axiom the named declaration depends on, transitively, including the
  // declaration itself when it is an axiom. Axiom types may mention further
  // constants, so the walk follows deps of axioms too.
  std::set<std::string> axiom_closure(const std::string& name) const {
    std::set<std::string> axioms;
    std::set<std::string> seen;
    std::deque<std::string> work{name};
    while (!work.empty()) {
      std::string cur = work.front();
      work.pop_front();
      if (!seen.insert(cur).second) continue;
      const EntryPtr* e = find(cur);
      if (!e) continue;
      if ((*e)->isAxiom) axioms.insert(cur);
      for (const auto& d : (*e)->deps) work.push_back(d);
    }
    return axioms;
  }

 private:
  std::shared_ptr<const std::vector<EntryPtr>> order_;
  GlobalsPtr byName_;
};

}  // namespace notears
