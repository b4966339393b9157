#pragma once

// Finite group class data and exact virtual-character arithmetic.
//
// A GroupTable stores conjugacy classes (id, size, representative order), the
// class-level power map, and the irreducible character table with values in a
// fixed cyclotomic field. Built-in tables cover C2, C3, C4, C2xC2, S3, D4,
// D5, F20 and generic cyclic groups; everything else loads from JSON.
//
// VirtualCharacter is an integer vector over the irreducibles of one table.
// Inner products, decomposition, mu (minimal real part of the values) and the
// class power operation are exact; floating point appears only in views.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "common.hpp"
#include "cyclotomic.hpp"

namespace artin {

struct ConjClass {
    std::string id;
    long long size = 1;
    int rep_order = 1;
};

class GroupTable {
public:
    GroupTable(std::string name, long long order, std::vector<ConjClass> classes,
               std::vector<std::vector<int>> power_map, std::vector<std::string> irr_ids,
               std::vector<std::vector<Cyclotomic>> irr_values, bool exact_values = true)
        : name_(std::move(name)),
          order_(order),
          classes_(std::move(classes)),
          power_map_(std::move(power_map)),
          irr_ids_(std::move(irr_ids)),
          irr_values_(std::move(irr_values)),
          exact_(exact_values) {
        validate();
    }

    const std::string& name() const { return name_; }
    long long order() const { return order_; }
    std::size_t num_classes() const { return classes_.size(); }
    const ConjClass& cls(std::size_t i) const { return classes_.at(i); }
    const std::vector<ConjClass>& classes() const { return classes_; }
    std::size_t num_irreducibles() const { return irr_ids_.size(); }
    const std::string& irr_id(std::size_t i) const { return irr_ids_.at(i); }
    const Cyclotomic& irr_value(std::size_t irr, std::size_t c) const {
        return irr_values_.at(irr).at(c);
    }
    long long irr_degree(std::size_t irr) const {
        return degree_of_value(irr_values_.at(irr).at(static_cast<std::size_t>(identity_)));
    }
    int identity_class() const { return identity_; }
    int trivial_index() const { return trivial_; }
    int cyclotomic_order() const { return cyc_order_; }
    bool exact() const { return exact_; }

    int class_index(const std::string& id) const {
        for (std::size_t i = 0; i < classes_.size(); ++i)
            if (classes_[i].id == id) return static_cast<int>(i);
        throw invalid_class_error("unknown class id '" + id + "' in group " + name_);
    }

    int irr_index(const std::string& id) const {
        for (std::size_t i = 0; i < irr_ids_.size(); ++i)
            if (irr_ids_[i] == id) return static_cast<int>(i);
        throw config_error("unknown irreducible id '" + id + "' in group " + name_);
    }

    // Class of g^m for g in class c. Only m mod rep_order matters.
    int power_class(int c, long long m) const {
        if (c < 0 || static_cast<std::size_t>(c) >= classes_.size())
            throw invalid_class_error("class index out of range");
        if (m < 0) throw domain_error("power_class requires m >= 0");
        int o = classes_[static_cast<std::size_t>(c)].rep_order;
        return power_map_[static_cast<std::size_t>(c)][static_cast<std::size_t>(m % o)];
    }

    nlohmann::json to_json() const;
    static std::shared_ptr<const GroupTable> from_json(const nlohmann::json& j);

private:
    static long long degree_of_value(const Cyclotomic& v) {
        Rat r = v.rational_value();
        if (!rat_is_integer(r)) throw computation_error("character degree is not an integer");
        return boost::multiprecision::numerator(r).convert_to<long long>();
    }

    void validate();

    std::string name_;
    long long order_;
    std::vector<ConjClass> classes_;
    std::vector<std::vector<int>> power_map_;
    std::vector<std::string> irr_ids_;
    std::vector<std::vector<Cyclotomic>> irr_values_;
    bool exact_;
    int identity_ = 0;
    int trivial_ = 0;
    int cyc_order_ = 1;
};

using GroupTablePtr = std::shared_ptr<const GroupTable>;

inline bool same_table(const GroupTable& a, const GroupTable& b) {
    if (&a == &b) return true;
    if (a.order() != b.order() || a.num_classes() != b.num_classes() ||
        a.num_irreducibles() != b.num_irreducibles())
        return false;
    for (std::size_t i = 0; i < a.num_classes(); ++i) {
        if (a.cls(i).id != b.cls(i).id || a.cls(i).size != b.cls(i).size ||
            a.cls(i).rep_order != b.cls(i).rep_order)
            return false;
    }
    for (std::size_t i = 0; i < a.num_irreducibles(); ++i) {
        if (a.irr_id(i) != b.irr_id(i)) return false;
        for (std::size_t c = 0; c < a.num_classes(); ++c)
            if (!(a.irr_value(i, c) == b.irr_value(i, c))) return false;
    }
    return true;
}

inline void GroupTable::validate() {
    if (order_ < 1) throw config_error("group order must be positive");
    if (classes_.empty()) throw config_error("group table has no classes");
    if (classes_[0].size != 1 || classes_[0].rep_order != 1)
        throw config_error("first class must be the identity (size 1, order 1)");
    identity_ = 0;

    long long total = 0;
    for (const auto& c : classes_) {
        if (c.size < 1 || c.rep_order < 1)
            throw config_error("class '" + c.id + "' has invalid size or order");
        total += c.size;
    }
    if (total != order_) throw config_error("class sizes do not sum to the group order");

    if (power_map_.size() != classes_.size()) throw config_error("power_map row count mismatch");
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        const auto& row = power_map_[c];
        int o = classes_[c].rep_order;
        if (static_cast<int>(row.size()) != o)
            throw config_error("power_map row for class '" + classes_[c].id +
                               "' must have rep_order entries");
        for (int e : row)
            if (e < 0 || static_cast<std::size_t>(e) >= classes_.size())
                throw config_error("power_map entry out of range");
        if (row[0] != identity_)
            throw config_error("power_map: g^0 must land in the identity class");
        if (o > 1 && row[1] != static_cast<int>(c))
            throw config_error("power_map: g^1 must stay in its own class");
        for (int m = 0; m < o; ++m) {
            int target = row[static_cast<std::size_t>(m)];
            int expected = o / std::gcd(o, m == 0 ? o : m);
            if (classes_[static_cast<std::size_t>(target)].rep_order != expected)
                throw config_error("power_map: element orders inconsistent for class '" +
                                   classes_[c].id + "'");
        }
    }

    if (irr_ids_.size() != classes_.size() || irr_values_.size() != classes_.size())
        throw config_error("need exactly one irreducible per conjugacy class");

    // Rebase all values into one cyclotomic field.
    cyc_order_ = 1;
    for (const auto& row : irr_values_)
        for (const auto& v : row) cyc_order_ = static_cast<int>(std::lcm(cyc_order_, v.order()));
    for (auto& row : irr_values_)
        for (auto& v : row) v = v.rebased(cyc_order_);

    // Degrees positive, trivial character present.
    trivial_ = -1;
    Rat sum_sq(0);
    Cyclotomic one = Cyclotomic::from_rational(cyc_order_, 1);
    for (std::size_t i = 0; i < irr_values_.size(); ++i) {
        long long deg = degree_of_value(irr_values_[i][static_cast<std::size_t>(identity_)]);
        if (deg < 1) throw config_error("irreducible '" + irr_ids_[i] + "' has nonpositive degree");
        sum_sq += Rat(deg) * Rat(deg);
        bool all_one = true;
        for (const auto& v : irr_values_[i])
            if (!(v == one)) {
                all_one = false;
                break;
            }
        if (all_one) trivial_ = static_cast<int>(i);
    }
    if (trivial_ < 0) throw config_error("no trivial character found in table");
    if (sum_sq != Rat(order_))
        throw config_error("sum of squared degrees does not equal the group order");

    // Orthogonality. Exact for exact tables; 1e-9 residual otherwise.
    for (std::size_t i = 0; i < irr_values_.size(); ++i) {
        for (std::size_t j = i; j < irr_values_.size(); ++j) {
            Cyclotomic acc(cyc_order_);
            for (std::size_t c = 0; c < classes_.size(); ++c) {
                acc += Rat(classes_[c].size) * (irr_values_[i][c] * irr_values_[j][c].conj());
            }
            acc *= Rat(1, order_);
            Cyclotomic expect = Cyclotomic::from_rational(cyc_order_, i == j ? 1 : 0);
            if (acc == expect) continue;
            if (exact_)
                throw config_error("character table rows '" + irr_ids_[i] + "' and '" +
                                   irr_ids_[j] + "' are not orthonormal");
            auto resid = (acc - expect).to_complex();
            if (std::abs(resid) > 1e-9)
                throw config_error("character table rows '" + irr_ids_[i] + "' and '" +
                                   irr_ids_[j] + "' fail orthonormality beyond 1e-9");
        }
    }
}

class VirtualCharacter {
public:
    VirtualCharacter(GroupTablePtr table, std::vector<long long> coeffs)
        : table_(std::move(table)), coeffs_(std::move(coeffs)) {
        if (!table_) throw config_error("character needs a group table");
        if (coeffs_.size() != table_->num_irreducibles())
            throw config_error("coefficient count does not match the number of irreducibles");
    }

    static VirtualCharacter irreducible(GroupTablePtr table, std::size_t i) {
        std::vector<long long> c(table->num_irreducibles(), 0);
        c.at(i) = 1;
        return VirtualCharacter(std::move(table), std::move(c));
    }

    static VirtualCharacter trivial(GroupTablePtr table) {
        auto i = static_cast<std::size_t>(table->trivial_index());
        return irreducible(std::move(table), i);
    }

    static VirtualCharacter regular(GroupTablePtr table) {
        std::vector<long long> c(table->num_irreducibles());
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = table->irr_degree(i);
        return VirtualCharacter(std::move(table), std::move(c));
    }

    // Exact decomposition of a class function; every multiplicity must be an
    // integer or the input was not a virtual character.
    static VirtualCharacter from_values(GroupTablePtr table, const std::vector<Cyclotomic>& values) {
        if (values.size() != table->num_classes())
            throw config_error("value count does not match the number of classes");
        int N = table->cyclotomic_order();
        std::vector<long long> coeffs(table->num_irreducibles());
        for (std::size_t i = 0; i < coeffs.size(); ++i) {
            Cyclotomic acc(N);
            for (std::size_t c = 0; c < values.size(); ++c)
                acc += Rat(table->cls(c).size) * (values[c].rebased(N) * table->irr_value(i, c).conj());
            acc *= Rat(1, table->order());
            if (!acc.is_rational() || !rat_is_integer(acc.rational_value()))
                throw computation_error("class function is not a virtual character");
            coeffs[i] = boost::multiprecision::numerator(acc.rational_value()).convert_to<long long>();
        }
        return VirtualCharacter(std::move(table), std::move(coeffs));
    }

    const GroupTablePtr& table() const { return table_; }
    const std::vector<long long>& coeffs() const { return coeffs_; }
    long long coeff(std::size_t i) const { return coeffs_.at(i); }

    Cyclotomic value_at(std::size_t c) const {
        Cyclotomic acc(table_->cyclotomic_order());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            acc += Rat(coeffs_[i]) * table_->irr_value(i, c);
        }
        return acc;
    }

    std::vector<Cyclotomic> values() const {
        std::vector<Cyclotomic> v;
        v.reserve(table_->num_classes());
        for (std::size_t c = 0; c < table_->num_classes(); ++c) v.push_back(value_at(c));
        return v;
    }

    std::vector<complexd> complex_values() const {
        std::vector<complexd> v;
        v.reserve(table_->num_classes());
        for (std::size_t c = 0; c < table_->num_classes(); ++c) v.push_back(value_at(c).to_complex());
        return v;
    }

    long long degree() const {
        long long d = 0;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) d += coeffs_[i] * table_->irr_degree(i);
        return d;
    }

    // sum |a_i| psi_i(1); dominates |chi(g)| everywhere and is the safe
    // substitute for chi(1) in tail bounds when coefficients are negative.
    long long abs_degree() const {
        long long d = 0;
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            d += std::llabs(coeffs_[i]) * table_->irr_degree(i);
        return d;
    }

    bool is_genuine() const {
        for (long long a : coeffs_)
            if (a < 0) return false;
        return true;
    }

    bool is_zero() const {
        for (long long a : coeffs_)
            if (a != 0) return false;
        return true;
    }

    bool is_irreducible() const {
        int ones = 0;
        for (long long a : coeffs_) {
            if (a == 1)
                ++ones;
            else if (a != 0)
                return false;
        }
        return ones == 1;
    }

    std::string label() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0) continue;
            if (!first) os << (coeffs_[i] > 0 ? "+" : "");
            if (coeffs_[i] == -1)
                os << "-";
            else if (coeffs_[i] != 1)
                os << coeffs_[i] << "*";
            os << table_->irr_id(i);
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

    friend VirtualCharacter operator+(const VirtualCharacter& a, const VirtualCharacter& b) {
        a.check_table(b);
        std::vector<long long> c(a.coeffs_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coeffs_[i];
        return VirtualCharacter(a.table_, std::move(c));
    }
    friend VirtualCharacter operator-(const VirtualCharacter& a, const VirtualCharacter& b) {
        a.check_table(b);
        std::vector<long long> c(a.coeffs_);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coeffs_[i];
        return VirtualCharacter(a.table_, std::move(c));
    }
    friend VirtualCharacter operator*(long long k, const VirtualCharacter& a) {
        std::vector<long long> c(a.coeffs_);
        for (auto& x : c) x *= k;
        return VirtualCharacter(a.table_, std::move(c));
    }
    friend VirtualCharacter operator*(const VirtualCharacter& a, long long k) { return k * a; }

    // Tensor product, decomposed exactly back into irreducibles.
    friend VirtualCharacter operator*(const VirtualCharacter& a, const VirtualCharacter& b) {
        a.check_table(b);
        std::vector<Cyclotomic> prod;
        prod.reserve(a.table_->num_classes());
        for (std::size_t c = 0; c < a.table_->num_classes(); ++c)
            prod.push_back(a.value_at(c) * b.value_at(c));
        return from_values(a.table_, prod);
    }

    void check_table(const VirtualCharacter& o) const {
        if (!same_table(*table_, *o.table_))
            throw table_mismatch_error("characters belong to different group tables");
    }

private:
    GroupTablePtr table_;
    std::vector<long long> coeffs_;
};

// <a, b> = (1/|G|) sum_C |C| a(C) conj(b(C)), exact.
inline Cyclotomic inner_product(const VirtualCharacter& a, const VirtualCharacter& b) {
    a.check_table(b);
    const auto& t = *a.table();
    Cyclotomic acc(t.cyclotomic_order());
    for (std::size_t c = 0; c < t.num_classes(); ++c)
        acc += Rat(t.cls(c).size) * (a.value_at(c) * b.value_at(c).conj());
    acc *= Rat(1, t.order());
    return acc;
}

inline long long inner_product_with_trivial(const VirtualCharacter& chi) {
    return chi.coeff(static_cast<std::size_t>(chi.table()->trivial_index()));
}

struct MuValue {
    double value = 0.0;       // float view
    Cyclotomic exact;         // exact algebraic real (real part of a character value)
    int class_index = 0;      // class where the minimum is attained
};

// mu(chi) = min over classes of Re(chi(C)). The minimum is selected on the
// float view; the exact value of the winning class is carried along.
inline MuValue mu(const VirtualCharacter& chi) {
    const auto& t = *chi.table();
    MuValue best;
    bool have = false;
    for (std::size_t c = 0; c < t.num_classes(); ++c) {
        Cyclotomic re = chi.value_at(c).real_part();
        double v = re.to_real();
        if (!have || v < best.value) {
            best.value = v;
            best.exact = re;
            best.class_index = static_cast<int>(c);
            have = true;
        }
    }
    return best;
}

inline std::vector<long long> decompose(const VirtualCharacter& chi) { return chi.coeffs(); }

// True when psi is an irreducible with psi^2 = trivial, i.e. degree 1 and all
// values real. Quadratic Dirichlet-type characters pass; complex linear
// characters like the order-4 one on F20 do not.
inline bool is_potentially_quadratic(const VirtualCharacter& psi) {
    if (!psi.is_irreducible())
        throw non_irreducible_error("is_potentially_quadratic needs an irreducible character");
    if (psi.degree() != 1) return false;
    for (std::size_t c = 0; c < psi.table()->num_classes(); ++c)
        if (!psi.value_at(c).is_real()) return false;
    return true;
}

struct InductionData {
    int base_degree = 1;          // [k:Q]
    long long tilde_degree = 0;   // degree of the induced character
    double mu_tilde = 0.0;        // mu of the induced character (declared or defaulted)
    bool mu_tilde_declared = false;
};

inline InductionData induction_over_Q(const VirtualCharacter& chi) {
    InductionData d;
    d.base_degree = 1;
    d.tilde_degree = chi.degree();
    d.mu_tilde = mu(chi).value;
    d.mu_tilde_declared = true;
    return d;
}

// When the closure's table is not available the default lower stand-in is
// max(base_degree * mu(chi), -tilde_degree).
inline InductionData make_induction(const VirtualCharacter& chi, int base_degree,
                                    std::optional<double> declared_mu_tilde = std::nullopt) {
    if (base_degree < 1) throw domain_error("base degree must be >= 1");
    InductionData d;
    d.base_degree = base_degree;
    d.tilde_degree = static_cast<long long>(base_degree) * chi.degree();
    if (declared_mu_tilde) {
        d.mu_tilde = *declared_mu_tilde;
        d.mu_tilde_declared = true;
        double floor_val = base_degree * mu(chi).value;
        if (mu(chi).value < 0 && d.mu_tilde < floor_val - 1e-12)
            throw config_error("declared mu of the induced character is below its valid floor");
    } else {
        d.mu_tilde = std::max(base_degree * mu(chi).value,
                              -static_cast<double>(d.tilde_degree));
        d.mu_tilde_declared = false;
    }
    return d;
}

// ---------------------------------------------------------------------------
// Built-in tables
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> order_labels(const std::vector<int>& orders) {
    std::vector<std::string> labels(orders.size());
    std::map<int, int> seen;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        int k = seen[orders[i]]++;
        std::string suffix;
        do {
            suffix.insert(suffix.begin(), static_cast<char>('a' + k % 26));
            k = k / 26 - 1;
        } while (k >= 0);
        labels[i] = std::to_string(orders[i]) + suffix;
    }
    return labels;
}

}  // namespace detail

inline GroupTablePtr cyclic_group(int n) {
    if (n < 1) throw config_error("cyclic group order must be positive");
    std::vector<int> orders(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) orders[static_cast<std::size_t>(j)] = n / std::gcd(n, j == 0 ? n : j);
    auto labels = detail::order_labels(orders);
    std::vector<ConjClass> classes;
    std::vector<std::vector<int>> pm;
    for (int j = 0; j < n; ++j) {
        classes.push_back({labels[static_cast<std::size_t>(j)], 1, orders[static_cast<std::size_t>(j)]});
        std::vector<int> row;
        for (int m = 0; m < orders[static_cast<std::size_t>(j)]; ++m)
            row.push_back(static_cast<int>((static_cast<long long>(j) * m) % n));
        pm.push_back(std::move(row));
    }
    std::vector<std::string> ids;
    std::vector<std::vector<Cyclotomic>> vals;
    for (int i = 0; i < n; ++i) {
        if (n == 1)
            ids.push_back("triv");
        else if (n == 2)
            ids.push_back(i == 0 ? "triv" : "sgn");
        else
            ids.push_back("chi" + std::to_string(i));
        std::vector<Cyclotomic> row;
        for (int j = 0; j < n; ++j)
            row.push_back(Cyclotomic::root_of_unity(n, static_cast<long long>(i) * j));
        vals.push_back(std::move(row));
    }
    return std::make_shared<GroupTable>("C" + std::to_string(n), n, std::move(classes),
                                        std::move(pm), std::move(ids), std::move(vals));
}

inline GroupTablePtr klein_four_group() {
    std::vector<ConjClass> classes = {{"1a", 1, 1}, {"2a", 1, 2}, {"2b", 1, 2}, {"2c", 1, 2}};
    std::vector<std::vector<int>> pm = {{0}, {0, 1}, {0, 2}, {0, 3}};
    auto r = [](long long v) { return Cyclotomic::from_rational(2, Rat(v)); };
    std::vector<std::string> ids = {"triv", "chi_a", "chi_b", "chi_c"};
    std::vector<std::vector<Cyclotomic>> vals = {
        {r(1), r(1), r(1), r(1)},
        {r(1), r(1), r(-1), r(-1)},
        {r(1), r(-1), r(1), r(-1)},
        {r(1), r(-1), r(-1), r(1)},
    };
    return std::make_shared<GroupTable>("C2xC2", 4, std::move(classes), std::move(pm),
                                        std::move(ids), std::move(vals));
}

inline GroupTablePtr s3_group() {
    std::vector<ConjClass> classes = {{"1a", 1, 1}, {"2a", 3, 2}, {"3a", 2, 3}};
    std::vector<std::vector<int>> pm = {{0}, {0, 1}, {0, 2, 2}};
    auto r = [](long long v) { return Cyclotomic::from_rational(6, Rat(v)); };
    std::vector<std::string> ids = {"triv", "sgn", "std"};
    std::vector<std::vector<Cyclotomic>> vals = {
        {r(1), r(1), r(1)},
        {r(1), r(-1), r(1)},
        {r(2), r(0), r(-1)},
    };
    return std::make_shared<GroupTable>("S3", 6, std::move(classes), std::move(pm), std::move(ids),
                                        std::move(vals));
}

inline GroupTablePtr d4_group() {
    // Classes: e, r^2, {r, r^3}, {s, r^2 s}, {rs, r^3 s}.
    std::vector<ConjClass> classes = {
        {"1a", 1, 1}, {"2a", 1, 2}, {"4a", 2, 4}, {"2b", 2, 2}, {"2c", 2, 2}};
    std::vector<std::vector<int>> pm = {{0}, {0, 1}, {0, 2, 1, 2}, {0, 3}, {0, 4}};
    auto r = [](long long v) { return Cyclotomic::from_rational(4, Rat(v)); };
    std::vector<std::string> ids = {"triv", "chi_r", "chi_s", "chi_rs", "std2"};
    std::vector<std::vector<Cyclotomic>> vals = {
        {r(1), r(1), r(1), r(1), r(1)},
        {r(1), r(1), r(1), r(-1), r(-1)},
        {r(1), r(1), r(-1), r(1), r(-1)},
        {r(1), r(1), r(-1), r(-1), r(1)},
        {r(2), r(-2), r(0), r(0), r(0)},
    };
    return std::make_shared<GroupTable>("D4", 8, std::move(classes), std::move(pm), std::move(ids),
                                        std::move(vals));
}

inline GroupTablePtr d5_group() {
    // Classes: e, {r, r^4}, {r^2, r^3}, reflections.
    std::vector<ConjClass> classes = {{"1a", 1, 1}, {"5a", 2, 5}, {"5b", 2, 5}, {"2a", 5, 2}};
    std::vector<std::vector<int>> pm = {{0}, {0, 1, 2, 2, 1}, {0, 2, 1, 1, 2}, {0, 3}};
    auto r = [](long long v) { return Cyclotomic::from_rational(10, Rat(v)); };
    // zeta5^k = zeta10^{2k}
    auto z5sum = [](long long a, long long b) {
        return Cyclotomic::root_of_unity(10, 2 * a) + Cyclotomic::root_of_unity(10, 2 * b);
    };
    std::vector<std::string> ids = {"triv", "sgn", "psi_a", "psi_b"};
    std::vector<std::vector<Cyclotomic>> vals = {
        {r(1), r(1), r(1), r(1)},
        {r(1), r(1), r(1), r(-1)},
        {r(2), z5sum(1, 4), z5sum(2, 3), r(0)},
        {r(2), z5sum(2, 3), z5sum(1, 4), r(0)},
    };
    return std::make_shared<GroupTable>("D5", 10, std::move(classes), std::move(pm), std::move(ids),
                                        std::move(vals));
}

inline GroupTablePtr f20_group() {
    // Frobenius group of order 20 = C5 : C4. Classes: e, the 4 nontrivial
    // elements of C5, and the three classes of complement elements by order.
    std::vector<ConjClass> classes = {
        {"1a", 1, 1}, {"5a", 4, 5}, {"4a", 5, 4}, {"2a", 5, 2}, {"4b", 5, 4}};
    std::vector<std::vector<int>> pm = {{0}, {0, 1, 1, 1, 1}, {0, 2, 3, 4}, {0, 3}, {0, 4, 3, 2}};
    auto r = [](long long v) { return Cyclotomic::from_rational(20, Rat(v)); };
    auto i_pow = [](long long k) { return Cyclotomic::root_of_unity(20, 5 * k); };  // i = zeta20^5
    std::vector<std::string> ids = {"triv", "lin_i", "lin_m", "lin_mi", "quad4"};
    std::vector<std::vector<Cyclotomic>> vals = {
        {r(1), r(1), r(1), r(1), r(1)},
        {r(1), r(1), i_pow(1), r(-1), i_pow(3)},
        {r(1), r(1), r(-1), r(1), r(-1)},
        {r(1), r(1), i_pow(3), r(-1), i_pow(1)},
        {r(4), r(-1), r(0), r(0), r(0)},
    };
    return std::make_shared<GroupTable>("F20", 20, std::move(classes), std::move(pm),
                                        std::move(ids), std::move(vals));
}

// Looks up a built-in table: C1..Cn (any n), C2xC2/V4, S3, D4, D5, F20.
inline GroupTablePtr builtin_group(const std::string& name) {
    if (name == "S3") return s3_group();
    if (name == "D4") return d4_group();
    if (name == "D5") return d5_group();
    if (name == "F20") return f20_group();
    if (name == "C2xC2" || name == "V4") return klein_four_group();
    if (name.size() >= 2 && name[0] == 'C') {
        bool digits = true;
        for (std::size_t i = 1; i < name.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) digits = false;
        if (digits) return cyclic_group(std::stoi(name.substr(1)));
    }
    throw config_error("unknown built-in group '" + name + "'");
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace detail {

inline Rat parse_rat_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw config_error("cannot parse rational literal '" + s + "'");
    }
}

// Best rational approximation with bounded denominator via continued
// fractions. JSON numbers that are not exactly representable must land
// within 1e-9 or the load is rejected.
inline Rat rationalize(double x) {
    if (x == std::floor(x) && std::fabs(x) < 9e15) return Rat(static_cast<long long>(x));
    double target = x;
    long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = target;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(frac);
        long long a = static_cast<long long>(fl);
        long long p2 = a * p1 + p0;
        long long q2 = a * q1 + q0;
        if (q2 > 1000000000LL) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        if (std::fabs(target - static_cast<double>(p1) / static_cast<double>(q1)) < 1e-15) break;
        double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    if (q1 == 0 || std::fabs(target - static_cast<double>(p1) / static_cast<double>(q1)) > 1e-9)
        throw config_error("numeric table entry not near a small rational; use \"p/q\" strings");
    return Rat(p1, q1);
}

inline Rat json_to_rat(const nlohmann::json& j) {
    if (j.is_string()) return parse_rat_string(j.get<std::string>());
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_number_float()) return rationalize(j.get<double>());
    throw config_error("expected a number or \"p/q\" string in character table");
}

inline Cyclotomic json_to_value(const nlohmann::json& j, int cyc_order) {
    if (j.is_object()) {
        // {"order": N, "coeffs": [...]} lossless form
        if (!j.contains("order") || !j.contains("coeffs"))
            throw config_error("cyclotomic value object needs 'order' and 'coeffs'");
        int n = j.at("order").get<int>();
        if (cyc_order % n != 0)
            throw config_error("cyclotomic value order does not divide the table order");
        const auto& arr = j.at("coeffs");
        Cyclotomic z(n);
        std::size_t k = 0;
        for (const auto& e : arr) {
            if (k >= z.coeffs().size()) throw config_error("too many cyclotomic coefficients");
            z += json_to_rat(e) * Cyclotomic::root_of_unity(n, static_cast<long long>(k));
            ++k;
        }
        return z.rebased(cyc_order);
    }
    Rat re, im(0);
    if (j.is_array()) {
        if (j.size() != 2) throw config_error("complex value must be [re, im]");
        re = json_to_rat(j.at(0));
        im = json_to_rat(j.at(1));
    } else {
        re = json_to_rat(j);
    }
    Cyclotomic v = Cyclotomic::from_rational(cyc_order, re);
    if (im != 0) {
        if (cyc_order % 4 != 0)
            throw config_error("table cannot hold imaginary entries; grows no 4th root of unity");
        v += im * Cyclotomic::root_of_unity(cyc_order, cyc_order / 4);
    }
    return v;
}

inline nlohmann::json rat_to_json(const Rat& r) {
    if (rat_is_integer(r)) {
        Int n = boost::multiprecision::numerator(r);
        if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
            return n.convert_to<long long>();
    }
    std::ostringstream os;
    os << r;
    return os.str();
}

}  // namespace detail

inline nlohmann::json GroupTable::to_json() const {
    nlohmann::json j;
    j["name"] = name_;
    j["order"] = order_;
    j["classes"] = nlohmann::json::array();
    for (const auto& c : classes_)
        j["classes"].push_back({{"id", c.id}, {"size", c.size}, {"rep_order", c.rep_order}});
    j["power_map"] = nlohmann::json::array();
    for (std::size_t c = 0; c < classes_.size(); ++c) {
        nlohmann::json row = nlohmann::json::array();
        for (int e : power_map_[c]) row.push_back(classes_[static_cast<std::size_t>(e)].id);
        j["power_map"].push_back(row);
    }
    // array of {id, values} rows: JSON objects reorder keys, matrices must not
    nlohmann::json irr = nlohmann::json::array();
    for (std::size_t i = 0; i < irr_ids_.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& v : irr_values_[i]) {
            if (v.is_rational()) {
                row.push_back(detail::rat_to_json(v.rational_value()));
            } else {
                nlohmann::json obj;
                obj["order"] = v.order();
                obj["coeffs"] = nlohmann::json::array();
                for (const auto& coef : v.coeffs()) obj["coeffs"].push_back(detail::rat_to_json(coef));
                row.push_back(obj);
            }
        }
        irr.push_back({{"id", irr_ids_[i]}, {"values", row}});
    }
    j["irreducibles"] = irr;
    return j;
}

inline GroupTablePtr GroupTable::from_json(const nlohmann::json& j) {
    try {
        std::string name = j.value("name", std::string("custom"));
        long long order = j.at("order").get<long long>();
        std::vector<ConjClass> classes;
        for (const auto& c : j.at("classes"))
            classes.push_back({c.at("id").get<std::string>(), c.at("size").get<long long>(),
                               c.at("rep_order").get<int>()});

        auto class_idx = [&](const std::string& id) -> int {
            for (std::size_t i = 0; i < classes.size(); ++i)
                if (classes[i].id == id) return static_cast<int>(i);
            throw config_error("power_map refers to unknown class '" + id + "'");
        };

        std::vector<std::vector<int>> pm;
        for (const auto& row : j.at("power_map")) {
            std::vector<int> r;
            for (const auto& e : row) {
                if (e.is_string())
                    r.push_back(class_idx(e.get<std::string>()));
                else
                    r.push_back(e.get<int>());
            }
            pm.push_back(std::move(r));
        }

        int cyc = 1;
        for (const auto& c : classes) cyc = static_cast<int>(std::lcm(cyc, c.rep_order));
        // Imaginary [re,im] entries need i in the field.
        bool needs_i = false;
        auto scan_value = [&](const nlohmann::json& v) {
            if (v.is_array() && v.size() == 2) {
                const auto& im = v.at(1);
                if (im.is_string() ? detail::parse_rat_string(im.get<std::string>()) != 0
                                   : (im.is_number() && im.get<double>() != 0.0))
                    needs_i = true;
            }
        };

        std::vector<std::string> ids;
        std::vector<nlohmann::json> raw_rows;
        const auto& irr = j.at("irreducibles");
        if (irr.is_object()) {
            for (auto it = irr.begin(); it != irr.end(); ++it) {
                ids.push_back(it.key());
                raw_rows.push_back(it.value());
            }
        } else {
            int k = 1;
            for (const auto& row : irr) {
                if (row.is_object() && row.contains("id") && row.contains("values")) {
                    ids.push_back(row.at("id").get<std::string>());
                    raw_rows.push_back(row.at("values"));
                } else {
                    ids.push_back("X" + std::to_string(k++));
                    raw_rows.push_back(row);
                }
            }
        }
        for (const auto& row : raw_rows)
            for (const auto& v : row) scan_value(v);
        if (needs_i) cyc = static_cast<int>(std::lcm(cyc, 4));

        std::vector<std::vector<Cyclotomic>> vals;
        bool exact = true;
        for (const auto& row : raw_rows) {
            std::vector<Cyclotomic> r;
            for (const auto& v : row) {
                if (v.is_number_float() && v.get<double>() != std::floor(v.get<double>()))
                    exact = false;
                if (v.is_array())
                    for (const auto& part : v)
                        if (part.is_number_float() && part.get<double>() != std::floor(part.get<double>()))
                            exact = false;
                r.push_back(detail::json_to_value(v, cyc));
            }
            vals.push_back(std::move(r));
        }

        return std::make_shared<GroupTable>(name, order, std::move(classes), std::move(pm),
                                            std::move(ids), std::move(vals), exact);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("group table JSON: ") + e.what());
    }
}

}  // namespace artin
