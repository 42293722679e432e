#include "tesselogic/local_rules.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "tesselogic/error.hpp"

namespace tesselogic {

int CellSystem::add_field(std::string name, int size) {
  fields.push_back({std::move(name), size});
  return static_cast<int>(fields.size()) - 1;
}

int CellSystem::field_index(const std::string& name) const {
  for (std::size_t i = 0; i < fields.size(); ++i)
    if (fields[i].name == name) return static_cast<int>(i);
  throw InvalidArgument("no field named " + name);
}

Rect CellSystem::rule_extent() const {
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  for (const auto& r : rules)
    for (const auto& [off, f] : r.vars) {
      x0 = std::min(x0, off.x), x1 = std::max(x1, off.x);
      y0 = std::min(y0, off.y), y1 = std::max(y1, off.y);
    }
  return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

CellSystem sft_system(const SFT& s) {
  CellSystem sys;
  const int q = static_cast<int>(s.alphabet().size());
  sys.add_field("color", q);
  // One rule per distinct domain, holding the forbidden tuples.
  std::map<std::vector<Vec2>, std::vector<std::vector<Color>>> by_domain;
  for (const auto& p : s.forbidden()) {
    std::vector<Vec2> dom;
    std::vector<Color> tuple;
    for (const auto& [z, c] : p.cells()) dom.push_back(z), tuple.push_back(c);
    by_domain[dom].push_back(tuple);
  }
  for (auto& [dom, tuples] : by_domain) {
    LocalRule r;
    for (Vec2 z : dom) r.vars.emplace_back(z, 0);
    auto table = std::make_shared<std::unordered_set<std::uint64_t>>();
    for (const auto& t : tuples) {
      std::uint64_t code = 0;
      for (Color c : t) code = code * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(c);
      table->insert(code);
    }
    const std::size_t n = dom.size();
    r.allowed = [table, n, q](const int* v) {
      std::uint64_t code = 0;
      for (std::size_t i = 0; i < n; ++i) code = code * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(v[i]);
      return table->count(code) == 0;
    };
    r.label = "forbid";
    sys.rules.push_back(std::move(r));
  }
  return sys;
}

RuleSearch::RuleSearch(const CellSystem& system, int width, int height, bool torus)
    : system_(system), width_(width), height_(height), torus_(torus), fields_(static_cast<int>(system.fields.size())) {
  if (width <= 0 || height <= 0) throw InvalidArgument("window must be non-empty");
  var_order_.resize(static_cast<std::size_t>(cell_count() * fields_));
  std::iota(var_order_.begin(), var_order_.end(), 0);
  allowed_.resize(static_cast<std::size_t>(cell_count() * fields_));
}

void RuleSearch::restrict(int cell, int field, std::vector<char> allowed) {
  allowed_.at(static_cast<std::size_t>(cell * fields_ + field)) = std::move(allowed);
}

void RuleSearch::set_order(std::vector<int> cells) {
  std::vector<int> vars;
  for (int c : cells)
    for (int f = 0; f < fields_; ++f) vars.push_back(c * fields_ + f);
  set_variable_order(std::move(vars));
}

void RuleSearch::set_cell_check(int cell, std::vector<int> fields, std::function<bool(const int*)> check) {
  if (cell < 0 || cell >= cell_count()) throw InvalidArgument("cell index out of range");
  if (fields.empty())
    for (int f = 0; f < fields_; ++f) fields.push_back(f);
  CellCheck c{cell, {}, std::move(check)};
  for (int f : fields) {
    if (f < 0 || f >= fields_) throw InvalidArgument("field index out of range");
    c.vars.push_back(cell * fields_ + f);
  }
  cell_checks_.push_back(std::move(c));
  if (indexed_) index_checks();
}

void RuleSearch::index_checks() {
  due_checks_.assign(var_of_pos_.size(), {});
  for (std::size_t i = 0; i < cell_checks_.size(); ++i) {
    int last = 0;
    for (int v : cell_checks_[i].vars) last = std::max(last, pos_of_var_[static_cast<std::size_t>(v)]);
    due_checks_[static_cast<std::size_t>(last)].push_back(static_cast<int>(i));
  }
}

void RuleSearch::clear_cell_checks() {
  cell_checks_.clear();
  due_checks_.assign(var_of_pos_.size(), {});
}

void RuleSearch::set_variable_order(std::vector<int> vars) {
  std::vector<int> check = vars;
  std::sort(check.begin(), check.end());
  bool ok = check.size() == var_order_.size();
  for (std::size_t i = 0; ok && i < check.size(); ++i) ok = check[i] == static_cast<int>(i);
  if (!ok) throw InvalidArgument("visiting order is not a permutation of the variables");
  var_order_ = std::move(vars);
  indexed_ = false;
}

void RuleSearch::index_instances() {
  const int nvars = cell_count() * fields_;
  var_of_pos_ = var_order_;
  pos_of_var_.assign(static_cast<std::size_t>(nvars), 0);
  auto& pos_of_var = pos_of_var_;
  for (std::size_t i = 0; i < var_of_pos_.size(); ++i)
    pos_of_var[static_cast<std::size_t>(var_of_pos_[i])] = static_cast<int>(i);
  conflicts_.assign(var_of_pos_.size() + 1, std::vector<std::uint64_t>((var_of_pos_.size() + 63) / 64, 0));

  instances_.clear();
  due_.assign(static_cast<std::size_t>(nvars), {});
  const Rect ext = system_.rule_extent();
  for (std::size_t ri = 0; ri < system_.rules.size(); ++ri) {
    const auto& rule = system_.rules[ri];
    auto place = [&](int x, int y) {
      Instance inst{static_cast<int>(ri), {}};
      for (const auto& [off, f] : rule.vars) {
        int cx = x + off.x, cy = y + off.y;
        if (torus_) {
          cx = ((cx % width_) + width_) % width_;
          cy = ((cy % height_) + height_) % height_;
        } else if (cx < 0 || cy < 0 || cx >= width_ || cy >= height_) {
          return;
        }
        inst.vars.push_back(cell_index({cx, cy}) * fields_ + f);
      }
      int last = 0;
      for (int v : inst.vars) last = std::max(last, pos_of_var[static_cast<std::size_t>(v)]);
      due_[static_cast<std::size_t>(last)].push_back(static_cast<int>(instances_.size()));
      instances_.push_back(std::move(inst));
    };
    // On a torus every anchor in the window; otherwise every translate whose
    // cells all fit inside, which may have its anchor outside.
    const int mx = torus_ ? 0 : ext.width, my = torus_ ? 0 : ext.height;
    for (int y = -my; y < height_ + my; ++y)
      for (int x = -mx; x < width_ + mx; ++x) place(x, y);
  }
  index_checks();
  indexed_ = true;
}

void RuleSearch::add_conflict(std::vector<std::uint64_t>& conflict, int var, std::size_t pos) const {
  const auto q = static_cast<std::size_t>(pos_of_var_[static_cast<std::size_t>(var)]);
  if (q != pos) conflict[q / 64] |= std::uint64_t{1} << (q % 64);
}

bool RuleSearch::consistent(std::size_t pos, std::vector<std::uint64_t>* conflict) {
  for (int ii : due_[pos]) {
    const Instance& inst = instances_[static_cast<std::size_t>(ii)];
    scratch_.resize(inst.vars.size());
    for (std::size_t k = 0; k < inst.vars.size(); ++k) scratch_[k] = values_[static_cast<std::size_t>(inst.vars[k])];
    if (!system_.rules[static_cast<std::size_t>(inst.rule)].allowed(scratch_.data())) {
      if (conflict)
        for (int var : inst.vars) add_conflict(*conflict, var, pos);
      return false;
    }
  }
  if (!cell_checks_.empty())
    for (int ci : due_checks_[pos]) {
      const CellCheck& c = cell_checks_[static_cast<std::size_t>(ci)];
      if (!c.check(values_.data() + static_cast<std::size_t>(c.cell * fields_))) {
        if (conflict)
          for (int var : c.vars) add_conflict(*conflict, var, pos);
        return false;
      }
    }
  return true;
}

RuleSearch::Outcome RuleSearch::dfs(std::size_t pos) {
  const std::size_t n = var_of_pos_.size();
  if (pos == prefix_ && prefix_ < n) {
    const long r = backjump(pos);
    return r == kFound ? Outcome::Found : r == kStop ? Outcome::Stop : Outcome::Continue;
  }
  if (pos == n) {
    switch ((*visit_)(values_)) {
      case Verdict::Stop:
        return Outcome::Stop;
      case Verdict::Accept:
        return Outcome::Found;
      default:
        return Outcome::Continue;
    }
  }
  const int var = var_of_pos_[pos];
  const int size = system_.fields[static_cast<std::size_t>(var % fields_)].size;
  const auto& mask = allowed_[static_cast<std::size_t>(var)];
  for (int v = 0; v < size; ++v) {
    if (!mask.empty() && (static_cast<std::size_t>(v) >= mask.size() || !mask[static_cast<std::size_t>(v)])) continue;
    if (node_budget_ && ++nodes_ > node_budget_) throw BudgetExceeded("search node budget exhausted");
    values_[static_cast<std::size_t>(var)] = v;
    if (!consistent(pos, nullptr)) continue;
    if (pos + 1 == prefix_ && prefix_ < n && prefix_filter_ && !prefix_filter_(values_)) continue;
    Outcome o = dfs(pos + 1);
    if (o == Outcome::Stop) return o;
    if (o == Outcome::Found) {
      // Inside the distinct prefix a hit only ends this branch.
      if (pos + 1 > prefix_) return Outcome::Found;
    }
  }
  return Outcome::Continue;
}

long RuleSearch::backjump(std::size_t pos) {
  if (pos == var_of_pos_.size()) {
    switch ((*visit_)(values_)) {
      case Verdict::Stop:
        return kStop;
      case Verdict::Accept:
        return kFound;
      default: {
        // A rejected leaf gives no information: plain chronological step.
        auto& up = conflicts_[pos - 1];
        for (std::size_t q = 0; q + 1 < pos; ++q) up[q / 64] |= std::uint64_t{1} << (q % 64);
        return static_cast<long>(pos) - 1;
      }
    }
  }
  auto& conflict = conflicts_[pos];
  std::fill(conflict.begin(), conflict.end(), 0);
  const int var = var_of_pos_[pos];
  const int size = system_.fields[static_cast<std::size_t>(var % fields_)].size;
  const auto& mask = allowed_[static_cast<std::size_t>(var)];
  for (int v = 0; v < size; ++v) {
    if (!mask.empty() && (static_cast<std::size_t>(v) >= mask.size() || !mask[static_cast<std::size_t>(v)])) continue;
    if (node_budget_ && ++nodes_ > node_budget_) throw BudgetExceeded("search node budget exhausted");
    values_[static_cast<std::size_t>(var)] = v;
    if (!consistent(pos, &conflict)) continue;
    const long r = backjump(pos + 1);
    if (r == kFound || r == kStop || r < static_cast<long>(pos)) return r;
  }
  // Every value failed: resume at the deepest variable involved.
  long j = -1;
  for (std::size_t w = conflict.size(); w-- > 0 && j < 0;)
    if (conflict[w]) j = static_cast<long>(w * 64 + 63 - static_cast<std::size_t>(__builtin_clzll(conflict[w])));
  if (j < static_cast<long>(prefix_)) return j;
  auto& target = conflicts_[static_cast<std::size_t>(j)];
  for (std::size_t w = 0; w < conflict.size(); ++w) target[w] |= conflict[w];
  target[static_cast<std::size_t>(j) / 64] &= ~(std::uint64_t{1} << (static_cast<std::size_t>(j) % 64));
  return j;
}

void RuleSearch::run(const std::function<bool(const std::vector<int>&)>& visit, int distinct_cells) {
  std::function<Verdict(const std::vector<int>&)> wrapped = [&](const std::vector<int>& v) {
    return visit(v) ? Verdict::Accept : Verdict::Stop;
  };
  search(wrapped, distinct_cells < 0 ? var_order_.size() : static_cast<std::size_t>(distinct_cells * fields_));
}

void RuleSearch::search(const std::function<Verdict(const std::vector<int>&)>& visit, std::size_t distinct_vars) {
  if (!indexed_) index_instances();
  values_.assign(static_cast<std::size_t>(cell_count() * fields_), 0);
  prefix_ = std::min(distinct_vars, var_of_pos_.size());
  visit_ = &visit;
  nodes_ = 0;
  dfs(0);
  visit_ = nullptr;
}

bool RuleSearch::exists() {
  bool found = false;
  run([&](const std::vector<int>&) {
    found = true;
    return false;
  });
  return found;
}

}  // namespace tesselogic
