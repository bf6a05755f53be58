#ifndef LINESING_RING_HPP
#define LINESING_RING_HPP

#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace linesing {

/// Variable list of a polynomial ring. The last coordinate variable is the
/// distinguished line direction x_n (the singular locus is its axis); an
/// optional deformation parameter t and internal auxiliary variables sit after
/// it and never count toward I = <x_1,...,x_{n-1}>.
class Ring {
  public:
    enum class VarKind { Coordinate, Deformation, Auxiliary };

    static std::shared_ptr<const Ring> make(std::vector<std::string> names) {
        return std::shared_ptr<const Ring>(new Ring(std::move(names), {}));
    }

    const std::vector<std::string>& names() const { return names_; }
    size_t arity() const { return names_.size(); }
    const std::string& name(size_t i) const { return names_.at(i); }

    VarKind kind(size_t i) const { return kinds_.at(i); }
    size_t coordinate_count() const { return ncoord_; }  // the paper's n
    size_t line_var() const { return ncoord_ - 1; }      // index of x_n
    bool is_line_section_var(size_t i) const { return i + 1 < ncoord_; }  // x_1..x_{n-1}

    std::optional<size_t> deformation_var() const { return deform_; }

    std::optional<size_t> index_of(const std::string& name) const {
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }
    size_t index_of_checked(const std::string& name) const {
        auto i = index_of(name);
        if (!i) throw std::invalid_argument("unknown variable '" + name + "'");
        return *i;
    }

    /// Same coordinate block extended by a deformation parameter.
    std::shared_ptr<const Ring> with_deformation(const std::string& tname) const {
        if (deform_) throw std::logic_error("ring already has a deformation variable");
        Ring* r = new Ring(*this);
        r->names_.push_back(tname);
        r->kinds_.push_back(VarKind::Deformation);
        r->deform_ = r->names_.size() - 1;
        r->check();
        return std::shared_ptr<const Ring>(r);
    }

    /// Extended by one auxiliary (always globally ordered) variable.
    std::shared_ptr<const Ring> with_auxiliary(const std::string& uname) const {
        Ring* r = new Ring(*this);
        r->names_.push_back(uname);
        r->kinds_.push_back(VarKind::Auxiliary);
        r->check();
        return std::shared_ptr<const Ring>(r);
    }

    bool same_vars(const Ring& o) const { return names_ == o.names_ && kinds_ == o.kinds_; }

  private:
    Ring(std::vector<std::string> names, std::vector<VarKind> kinds)
        : names_(std::move(names)), kinds_(std::move(kinds)) {
        if (kinds_.empty()) kinds_.assign(names_.size(), VarKind::Coordinate);
        ncoord_ = 0;
        for (auto k : kinds_)
            if (k == VarKind::Coordinate) ++ncoord_;
        check();
    }

    void check() const {
        if (names_.empty()) throw std::invalid_argument("ring needs at least one variable");
        std::set<std::string> seen;
        for (const auto& n : names_) {
            if (n.empty()) throw std::invalid_argument("empty variable name");
            if (!seen.insert(n).second)
                throw std::invalid_argument("duplicate variable name '" + n + "'");
        }
        if (ncoord_ == 0) throw std::invalid_argument("ring needs a coordinate variable");
    }

    std::vector<std::string> names_;
    std::vector<VarKind> kinds_;
    size_t ncoord_ = 0;
    std::optional<size_t> deform_;
};

using RingPtr = std::shared_ptr<const Ring>;

}  // namespace linesing

#endif
