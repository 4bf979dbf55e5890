#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "scatsim/error.hpp"
#include "scatsim/types.hpp"

namespace scatsim {

// One master plus up to seven active slaves. All traffic inside a piconet
// relays through the master; slaves of the same piconet are not neighbors.
struct Piconet {
  PiconetId pid = 0;
  NodeId master = 0;
  std::vector<NodeId> slaves;  // polling order

  bool has_slave(NodeId n) const {
    return std::find(slaves.begin(), slaves.end(), n) != slaves.end();
  }
  bool has_member(NodeId n) const { return n == master || has_slave(n); }
};

// Master/slave membership graph of a whole scatternet. A bridge is any node
// with membership in two or more piconets. Links exist only between a master
// and each of its slaves; membership, not radio range, defines the graph.
class Scatternet {
 public:
  PiconetId add_piconet(NodeId master, const std::vector<NodeId>& slaves) {
    if (slaves.size() > static_cast<std::size_t>(kMaxSlaves))
      raise(Errc::piconet_full, "piconet would have " + std::to_string(slaves.size()) + " slaves");
    if (masters_.count(master))
      raise(Errc::duplicate_master, "node " + std::to_string(master) + " already masters a piconet");
    std::set<NodeId> seen{master};
    for (NodeId s : slaves)
      if (!seen.insert(s).second)
        raise(Errc::duplicate_member, "node " + std::to_string(s) + " listed twice");

    PiconetId pid = next_pid_++;
    piconets_[pid] = Piconet{pid, master, slaves};
    masters_[master] = pid;
    membership_[master].insert(pid);
    for (NodeId s : slaves) membership_[s].insert(pid);
    return pid;
  }

  // Adds a slave membership without dropping existing ones; the node becomes
  // a bridge. A master joining elsewhere as slave keeps its own piconet.
  void migrate_as_slave(NodeId node, PiconetId to) {
    Piconet& p = piconet_mut(to);
    if (p.has_member(node))
      raise(Errc::already_member, "node " + std::to_string(node) + " already in piconet " + std::to_string(to));
    if (p.slaves.size() >= static_cast<std::size_t>(kMaxSlaves))
      raise(Errc::piconet_full, "piconet " + std::to_string(to) + " already has 7 slaves");
    p.slaves.push_back(node);
    membership_[node].insert(to);
  }

  // Removes one membership. Leaving a piconet the node masters dissolves it.
  void leave(NodeId node, PiconetId pid) {
    Piconet& p = piconet_mut(pid);
    if (p.master == node) {
      for (NodeId s : p.slaves) forget_membership(s, pid);
      forget_membership(node, pid);
      masters_.erase(node);
      piconets_.erase(pid);
      return;
    }
    auto it = std::find(p.slaves.begin(), p.slaves.end(), node);
    if (it == p.slaves.end())
      raise(Errc::unknown_node, "node " + std::to_string(node) + " is not a member of piconet " + std::to_string(pid));
    p.slaves.erase(it);
    forget_membership(node, pid);
  }

  // Masters where the node is slave, slaves where it is master. Co-slaves
  // are never neighbors: a slave cannot talk to another slave directly.
  std::set<NodeId> neighbors(NodeId node) const {
    auto mit = membership_.find(node);
    if (mit == membership_.end())
      raise(Errc::unknown_node, "node " + std::to_string(node) + " is not in the scatternet");
    std::set<NodeId> out;
    for (PiconetId pid : mit->second) {
      const Piconet& p = piconets_.at(pid);
      if (p.master == node)
        out.insert(p.slaves.begin(), p.slaves.end());
      else
        out.insert(p.master);
    }
    return out;
  }

  bool link_exists(NodeId a, NodeId b) const {
    require_known(a);
    require_known(b);
    if (a == b) return false;
    auto& mem = membership_.at(a);
    for (PiconetId pid : mem) {
      const Piconet& p = piconets_.at(pid);
      if (p.master == a && p.has_slave(b)) return true;
      if (p.master == b && p.has_slave(a)) return true;
    }
    return false;
  }

  // True iff every node can be reached from every other over master-slave
  // links (breadth-first over link_exists edges).
  bool is_connected() const {
    if (membership_.empty()) raise(Errc::empty_scatternet, "no nodes");
    std::set<NodeId> visited;
    std::vector<NodeId> frontier{membership_.begin()->first};
    visited.insert(frontier.front());
    while (!frontier.empty()) {
      NodeId n = frontier.back();
      frontier.pop_back();
      for (NodeId m : neighbors(n))
        if (visited.insert(m).second) frontier.push_back(m);
    }
    return visited.size() == membership_.size();
  }

  bool contains(NodeId node) const { return membership_.count(node) != 0; }
  bool has_piconet(PiconetId pid) const { return piconets_.count(pid) != 0; }

  const Piconet& piconet(PiconetId pid) const {
    auto it = piconets_.find(pid);
    if (it == piconets_.end())
      raise(Errc::unknown_piconet, "piconet " + std::to_string(pid));
    return it->second;
  }

  // Sorted; stable across queries. Drives bridge window rotation.
  std::vector<PiconetId> memberships(NodeId node) const {
    auto it = membership_.find(node);
    if (it == membership_.end())
      raise(Errc::unknown_node, "node " + std::to_string(node) + " is not in the scatternet");
    return {it->second.begin(), it->second.end()};
  }

  bool is_master_of(NodeId node, PiconetId pid) const { return piconet(pid).master == node; }

  std::set<NodeId> nodes() const {
    std::set<NodeId> out;
    for (auto& [n, _] : membership_) out.insert(n);
    return out;
  }

  const std::map<PiconetId, Piconet>& piconets() const { return piconets_; }

  std::size_t node_count() const { return membership_.size(); }

 private:
  Piconet& piconet_mut(PiconetId pid) {
    auto it = piconets_.find(pid);
    if (it == piconets_.end())
      raise(Errc::unknown_piconet, "piconet " + std::to_string(pid));
    return it->second;
  }

  void forget_membership(NodeId node, PiconetId pid) {
    auto it = membership_.find(node);
    if (it == membership_.end()) return;
    it->second.erase(pid);
    if (it->second.empty()) membership_.erase(it);
  }

  void require_known(NodeId n) const {
    if (!membership_.count(n))
      raise(Errc::unknown_node, "node " + std::to_string(n) + " is not in the scatternet");
  }

  PiconetId next_pid_ = 0;
  std::map<PiconetId, Piconet> piconets_;
  std::map<NodeId, PiconetId> masters_;
  std::map<NodeId, std::set<PiconetId>> membership_;
};

}  // namespace scatsim
