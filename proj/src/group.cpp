#include "cfw/group.hpp"

#include <algorithm>
#include <sstream>

namespace cfw {

namespace {

Int mod_reduce(Int v, Int q) {
  Int r = v % q;
  if (r < 0) r += q;
  return r;
}

}  // namespace

GroupDescriptor GroupDescriptor::trivial() {
  GroupDescriptor d;
  d.kind = GroupKind::DirectSum;
  return d;
}

GroupDescriptor GroupDescriptor::free_abelian(int m) {
  GroupDescriptor d;
  d.kind = GroupKind::FreeAbelian;
  d.rank = m;
  return d;
}

GroupDescriptor GroupDescriptor::cyclic(Int q) {
  GroupDescriptor d;
  d.kind = GroupKind::Cyclic;
  d.order = q;
  return d;
}

GroupDescriptor GroupDescriptor::direct_sum(std::vector<GroupDescriptor> summands) {
  GroupDescriptor d;
  d.kind = GroupKind::DirectSum;
  d.parts = std::move(summands);
  return d;
}

GroupDescriptor GroupDescriptor::cyclic_sum(Int q, int copies) {
  std::vector<GroupDescriptor> parts(static_cast<size_t>(copies), cyclic(q));
  return direct_sum(std::move(parts));
}

GroupDescriptor GroupDescriptor::lattice_rm(int m, const Rational& mesh) {
  GroupDescriptor d;
  d.kind = GroupKind::LatticeR;
  d.rank = m;
  d.mesh = mesh;
  return d;
}

GroupDescriptor GroupDescriptor::semidirect(GroupDescriptor base, GroupDescriptor j,
                                            int p) {
  GroupDescriptor d;
  d.kind = GroupKind::Semidirect;
  d.parts.push_back(std::move(base));
  d.parts.push_back(std::move(j));
  d.twist_p = p;
  return d;
}

void GroupDescriptor::validate() const {
  switch (kind) {
    case GroupKind::FreeAbelian:
      if (rank < 0) throw GroupError("free-abelian rank must be >= 0");
      break;
    case GroupKind::Cyclic:
      if (order < 2) throw GroupError("cyclic order must be >= 2");
      break;
    case GroupKind::DirectSum:
      for (const auto& p : parts) p.validate();
      break;
    case GroupKind::LatticeR:
      if (rank < 1) throw GroupError("lattice-Rm dimension must be >= 1");
      if (mesh <= 0) throw GroupError("lattice-Rm mesh must be positive");
      break;
    case GroupKind::Semidirect:
      if (twist_p < 2) throw GroupError("semidirect p must be >= 2");
      if (parts.size() != 2) throw GroupError("semidirect needs base and J parts");
      parts[0].validate();
      parts[1].validate();
      if (!parts[0].is_abelian() || !parts[1].is_abelian())
        throw GroupError("semidirect base and J must be Abelian");
      break;
  }
}

int GroupDescriptor::slot_count() const {
  switch (kind) {
    case GroupKind::FreeAbelian:
    case GroupKind::LatticeR:
      return rank;
    case GroupKind::Cyclic:
      return 1;
    case GroupKind::DirectSum: {
      int n = 0;
      for (const auto& p : parts) n += p.slot_count();
      return n;
    }
    case GroupKind::Semidirect:
      return parts[0].slot_count() + twist_p * parts[1].slot_count() + 1;
  }
  return 0;
}

std::vector<Int> GroupDescriptor::slot_moduli() const {
  std::vector<Int> out;
  out.reserve(static_cast<size_t>(slot_count()));
  switch (kind) {
    case GroupKind::FreeAbelian:
    case GroupKind::LatticeR:
      out.assign(static_cast<size_t>(rank), 0);
      break;
    case GroupKind::Cyclic:
      out.push_back(order);
      break;
    case GroupKind::DirectSum:
      for (const auto& p : parts) {
        auto sub = p.slot_moduli();
        out.insert(out.end(), sub.begin(), sub.end());
      }
      break;
    case GroupKind::Semidirect: {
      auto base = parts[0].slot_moduli();
      out.insert(out.end(), base.begin(), base.end());
      auto j = parts[1].slot_moduli();
      for (int copy = 0; copy < twist_p; ++copy)
        out.insert(out.end(), j.begin(), j.end());
      out.push_back(twist_p);
      break;
    }
  }
  return out;
}

Rational GroupDescriptor::point_weight() const {
  switch (kind) {
    case GroupKind::FreeAbelian:
    case GroupKind::Cyclic:
      return 1;
    case GroupKind::LatticeR: {
      Rational w = 1;
      for (int i = 0; i < rank; ++i) w *= mesh;
      return w;
    }
    case GroupKind::DirectSum: {
      Rational w = 1;
      for (const auto& p : parts) w *= p.point_weight();
      return w;
    }
    case GroupKind::Semidirect: {
      Rational w = parts[0].point_weight();
      for (int copy = 0; copy < twist_p; ++copy) w *= parts[1].point_weight();
      return w;
    }
  }
  return 1;
}

bool GroupDescriptor::is_abelian() const {
  if (kind == GroupKind::Semidirect)
    return parts[1].is_trivial();
  if (kind == GroupKind::DirectSum)
    return std::all_of(parts.begin(), parts.end(),
                       [](const GroupDescriptor& p) { return p.is_abelian(); });
  return true;
}

bool GroupDescriptor::is_trivial() const { return slot_count() == 0; }

bool GroupDescriptor::operator==(const GroupDescriptor& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case GroupKind::FreeAbelian:
      return rank == other.rank;
    case GroupKind::Cyclic:
      return order == other.order;
    case GroupKind::LatticeR:
      return rank == other.rank && mesh == other.mesh;
    case GroupKind::DirectSum:
      return parts == other.parts;
    case GroupKind::Semidirect:
      return twist_p == other.twist_p && parts == other.parts;
  }
  return false;
}

std::string GroupDescriptor::describe() const {
  std::ostringstream os;
  switch (kind) {
    case GroupKind::FreeAbelian:
      os << "Z^" << rank;
      break;
    case GroupKind::Cyclic:
      os << "Z(" << order << ")";
      break;
    case GroupKind::LatticeR:
      os << "(" << rational_to_string(mesh) << "*Z)^" << rank;
      break;
    case GroupKind::DirectSum:
      if (parts.empty()) {
        os << "{0}";
      } else {
        for (size_t i = 0; i < parts.size(); ++i) {
          if (i) os << " (+) ";
          os << parts[i].describe();
        }
      }
      break;
    case GroupKind::Semidirect:
      os << parts[0].describe() << " x " << parts[1].describe() << "^" << twist_p
         << " x| Z(" << twist_p << ")";
      break;
  }
  return os.str();
}

std::string element_to_string(const GroupElement& a) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < a.coords.size(); ++i) {
    if (i) os << ",";
    os << a.coords[i];
  }
  os << ")";
  return os.str();
}

Group::Group(GroupDescriptor desc) : desc_(std::move(desc)) {
  desc_.validate();
  moduli_ = desc_.slot_moduli();
  point_weight_ = desc_.point_weight();
}

GroupElement Group::identity() const {
  return GroupElement(std::vector<Int>(moduli_.size(), 0));
}

GroupElement Group::make(std::vector<Int> coords) const {
  return reduce(GroupElement(std::move(coords)));
}

GroupElement Group::reduce(GroupElement a) const {
  if (a.coords.size() != moduli_.size())
    throw GroupError("element shape does not match group descriptor");
  for (size_t i = 0; i < moduli_.size(); ++i)
    if (moduli_[i] > 0) a.coords[i] = mod_reduce(a.coords[i], moduli_[i]);
  return a;
}

void Group::check_conforms(const GroupElement& a) const {
  if (a.coords.size() != moduli_.size())
    throw GroupError("element shape does not match group descriptor");
  for (size_t i = 0; i < moduli_.size(); ++i)
    if (moduli_[i] > 0 && (a.coords[i] < 0 || a.coords[i] >= moduli_[i]))
      throw GroupError("cyclic coordinate out of range");
}

bool Group::is_identity(const GroupElement& a) const {
  return std::all_of(a.coords.begin(), a.coords.end(),
                     [](Int v) { return v == 0; });
}

void Group::op_span(const GroupDescriptor& d, int base, const GroupElement& a,
                    const GroupElement& b, GroupElement& out) const {
  switch (d.kind) {
    case GroupKind::FreeAbelian:
    case GroupKind::LatticeR:
      for (int i = 0; i < d.rank; ++i)
        out.coords[base + i] = a.coords[base + i] + b.coords[base + i];
      break;
    case GroupKind::Cyclic:
      out.coords[base] = mod_reduce(a.coords[base] + b.coords[base], d.order);
      break;
    case GroupKind::DirectSum: {
      int off = base;
      for (const auto& p : d.parts) {
        op_span(p, off, a, b, out);
        off += p.slot_count();
      }
      break;
    }
    case GroupKind::Semidirect: {
      const int base_slots = d.parts[0].slot_count();
      const int j_slots = d.parts[1].slot_count();
      const int p = d.twist_p;
      const int res_slot = base + base_slots + p * j_slots;
      op_span(d.parts[0], base, a, b, out);
      // x + A^n y: block i of A^n y is block (i - n mod p) of y.
      const Int n = a.coords[res_slot];
      for (int i = 0; i < p; ++i) {
        const int src = static_cast<int>(mod_reduce(i - n, p));
        const int dst_off = base + base_slots + i * j_slots;
        const int src_off = base + base_slots + src * j_slots;
        for (int s = 0; s < j_slots; ++s) {
          Int v = a.coords[dst_off + s] + b.coords[src_off + s];
          const Int q = moduli_[static_cast<size_t>(dst_off + s)];
          if (q > 0) v = mod_reduce(v, q);
          out.coords[dst_off + s] = v;
        }
      }
      out.coords[res_slot] = mod_reduce(a.coords[res_slot] + b.coords[res_slot], p);
      break;
    }
  }
}

GroupElement Group::op(const GroupElement& a, const GroupElement& b) const {
  check_conforms(a);
  check_conforms(b);
  GroupElement out(std::vector<Int>(moduli_.size(), 0));
  op_span(desc_, 0, a, b, out);
  return out;
}

void Group::inv_span(const GroupDescriptor& d, int base, const GroupElement& a,
                     GroupElement& out) const {
  switch (d.kind) {
    case GroupKind::FreeAbelian:
    case GroupKind::LatticeR:
      for (int i = 0; i < d.rank; ++i) out.coords[base + i] = -a.coords[base + i];
      break;
    case GroupKind::Cyclic:
      out.coords[base] = mod_reduce(-a.coords[base], d.order);
      break;
    case GroupKind::DirectSum: {
      int off = base;
      for (const auto& p : d.parts) {
        inv_span(p, off, a, out);
        off += p.slot_count();
      }
      break;
    }
    case GroupKind::Semidirect: {
      const int base_slots = d.parts[0].slot_count();
      const int j_slots = d.parts[1].slot_count();
      const int p = d.twist_p;
      const int res_slot = base + base_slots + p * j_slots;
      inv_span(d.parts[0], base, a, out);
      // (g,x,n)^{-1} = (-g, -A^{-n} x, -n); block i of A^{-n} x is block
      // (i + n mod p) of x.
      const Int n = a.coords[res_slot];
      for (int i = 0; i < p; ++i) {
        const int src = static_cast<int>(mod_reduce(i + n, p));
        const int dst_off = base + base_slots + i * j_slots;
        const int src_off = base + base_slots + src * j_slots;
        for (int s = 0; s < j_slots; ++s) {
          Int v = -a.coords[src_off + s];
          const Int q = moduli_[static_cast<size_t>(dst_off + s)];
          if (q > 0) v = mod_reduce(v, q);
          out.coords[dst_off + s] = v;
        }
      }
      out.coords[res_slot] = mod_reduce(-n, p);
      break;
    }
  }
}

GroupElement Group::inv(const GroupElement& a) const {
  check_conforms(a);
  GroupElement out(std::vector<Int>(moduli_.size(), 0));
  inv_span(desc_, 0, a, out);
  return out;
}

GroupElement Group::power(const GroupElement& a, Int k) const {
  check_conforms(a);
  if (k < 0) return power(inv(a), -k);
  GroupElement acc = identity();
  GroupElement sq = a;
  while (k > 0) {
    if (k & 1) acc = op(acc, sq);
    sq = op(sq, sq);
    k >>= 1;
  }
  return acc;
}

std::optional<Int> Group::element_order(const GroupElement& a, Int bound) const {
  if (bound < 1) throw GroupError("element_order bound must be >= 1");
  check_conforms(a);
  GroupElement acc = a;
  for (Int k = 1; k <= bound; ++k) {
    if (is_identity(acc)) return k;
    acc = op(acc, a);
  }
  return std::nullopt;
}

Rational Group::haar_weight(std::span<const GroupElement> set) const {
  std::vector<GroupElement> copy(set.begin(), set.end());
  for (const auto& a : copy) check_conforms(a);
  std::sort(copy.begin(), copy.end());
  copy.erase(std::unique(copy.begin(), copy.end()), copy.end());
  return Rational(static_cast<long>(copy.size())) * point_weight_;
}

}  // namespace cfw
