#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qstab/rep.hpp"

namespace qstab {

struct NamedRep {
    std::string name;
    Representation rep;
};

// One representative per isomorphism class for the given algebra, with
// catalog names. Uses closed-form families for recognized algebras and
// falls back to matrix enumeration. Implemented by the catalog.
std::vector<NamedRep> catalog_named_indecs(const std::shared_ptr<const AlgebraSpec>& alg,
                                           const DimVec& bound, const Limits& lim);

// All isomorphism classes of nonzero modules with dimension vector
// componentwise <= bound, plus the short exact sequences among them.
class ModuleUniverse {
public:
    struct ClassInfo {
        Representation rep;
        std::string name;
        std::vector<int> summands; // indec class ids, sorted, with multiplicity
        DimVec dims;
    };

    // Class ids of (sub, mid, quot) for every short exact sequence
    // 0 -> L -> M -> M/L -> 0 with L a proper nonzero submodule.
    struct SES {
        int sub;
        int mid;
        int quot;
        bool operator<(const SES& o) const {
            if (sub != o.sub) return sub < o.sub;
            if (mid != o.mid) return mid < o.mid;
            return quot < o.quot;
        }
    };

    static std::shared_ptr<const ModuleUniverse> build(
        std::shared_ptr<const AlgebraSpec> alg, DimVec bound, Limits lim = {});

    const AlgebraSpec& algebra() const { return *alg_; }
    const std::shared_ptr<const AlgebraSpec>& algebra_ptr() const { return alg_; }
    const DimVec& bound() const { return bound_; }
    const Limits& limits() const { return lim_; }

    int class_count() const { return static_cast<int>(classes_.size()); }
    const ClassInfo& cls(int id) const { return classes_.at(static_cast<std::size_t>(id)); }
    const std::vector<int>& indec_ids() const { return indec_ids_; }
    bool is_indec_class(int id) const { return cls(id).summands.size() == 1; }

    // Isomorphism class id of M; OutOfUniverse when M does not fit the
    // bound. ZeroObject for the zero module.
    int classify(const Representation& M) const;

    // Class id by catalog name, -1 when absent.
    int class_by_name(const std::string& name) const;

    const std::vector<SES>& ses_table() const { return ses_; }

    // Classes of nonzero subobjects (resp. quotients) of the class
    // representative, self included.
    const std::vector<int>& sub_class_ids(int id) const { return subs_.at(static_cast<std::size_t>(id)); }
    const std::vector<int>& quot_class_ids(int id) const { return quots_.at(static_cast<std::size_t>(id)); }

    // True when enlarging the bound by one in every coordinate produces no
    // indecomposable outside the bound; results over a non-exact window
    // are only window-relative.
    bool exact() const { return exact_; }

private:
    ModuleUniverse() = default;

    std::shared_ptr<const AlgebraSpec> alg_;
    DimVec bound_;
    Limits lim_;
    std::vector<ClassInfo> classes_;
    std::vector<int> indec_ids_;
    std::vector<SES> ses_;
    std::vector<std::vector<int>> subs_, quots_;
    std::map<std::string, int> by_name_;
    bool exact_ = false;
    mutable std::map<std::string, int> classify_cache_;
};

} // namespace qstab
