#include "genex/catalog.hpp"

#include <algorithm>

#include "genex/coefficients.hpp"

namespace genex {
namespace {

MethodSpec two_stage(std::string name, int order, std::optional<int> ps_order, std::vector<double> a,
                     std::vector<double> b) {
  MethodSpec method{std::move(name), order, {}, ps_order};
  for (std::size_t i = 0; i < a.size(); ++i) method.terms.push_back(Term{b[i], {a[i], 1.0 - a[i]}});
  return method;
}

// S_{a h} o S_{(1-2a) h} o S_{a h}
MethodSpec palindromic3(std::string name, int order, std::optional<int> ps_order, std::vector<double> a,
                        std::vector<double> b) {
  MethodSpec method{std::move(name), order, {}, ps_order};
  for (std::size_t i = 0; i < a.size(); ++i)
    method.terms.push_back(Term{b[i], {a[i], 1.0 - 2.0 * a[i], a[i]}});
  return method;
}

// S_{a1 h} o S_{a2 h} o S_{(1-2a1-2a2) h} o S_{a2 h} o S_{a1 h}
MethodSpec symmetric5(std::string name, int order, std::optional<int> ps_order, std::vector<double> a1,
                      std::vector<double> a2, std::vector<double> b) {
  MethodSpec method{std::move(name), order, {}, ps_order};
  for (std::size_t i = 0; i < a1.size(); ++i)
    method.terms.push_back(Term{b[i], {a1[i], a2[i], 1.0 - 2.0 * a1[i] - 2.0 * a2[i], a2[i], a1[i]}});
  return method;
}

std::vector<MethodSpec> make_catalog() {
  std::vector<MethodSpec> catalog;

  catalog.push_back(MethodSpec{"basic", 2, {Term{1.0, {1.0}}}, 3});
  catalog.push_back(mpe_method(StepSequence::harmonic(2), "psi4-extrap"));
  catalog.push_back(mpe_method(StepSequence::harmonic(3), "psi6-extrap"));
  catalog.push_back(mpe_method(StepSequence::harmonic(4), "psi8-extrap"));

  // k = 2 member of the two-stage order-4 family with G51 = -0.2089, G52 = 0.00274.
  {
    const double b1 = -0.64781208161969029;
    catalog.push_back(two_stage("psi22", 4, 5, {0.12622211025760578, 0.43402499003620695}, {b1, 1.0 - b1}));
  }

  // Pseudo-symplectic of order 7: also vanishes gt63 and gt75.
  {
    const double b1 = 0.09012936855999465;
    const double b2 = -1.8742613286568583;
    catalog.push_back(two_stage("psi32s", 4, 7, {-0.19220568886474299, 0.7952090547057717, 0.615},
                                {b1, b2, 1.0 - b1 - b2}));
  }

  // Order 6, vanishes gt87, gt88 and gt99.
  {
    const double b1 = 0.7482993205697204;
    const double b2 = -0.34096002148336635;
    const double b3 = -1.5697387622875072;
    const double b4 = -0.11572553679884676;
    catalog.push_back(palindromic3("psi6-k5-ps9", 6, 9,
                                   {0.7702669932516844, 2.0 / 100.0, 0.5133170199053506, 1.1686905913031624,
                                    1.0 / 3.0},
                                   {b1, b2, b3, b4, 1.0 - b1 - b2 - b3 - b4}));
  }

  // Order 8, vanishes G91.
  {
    const double b1 = 0.6402721677360648;
    const double b2 = -0.4488395035838362;
    const double b3 = -11.611098146500447;
    catalog.push_back(symmetric5("psi8-k4", 8, std::nullopt,
                                 {-0.2539842055534987, -0.1297472147351918, 0.283267969084071, 0.0671551220219572},
                                 {0.4514159659747628, 0.5893868250930246, 0.0411275969512266, 0.3228966120312048},
                                 {b1, b2, b3, 1.0 - b1 - b2 - b3}));
  }
  return catalog;
}

}  // namespace

const std::vector<MethodSpec>& builtin_catalog() {
  static const std::vector<MethodSpec> catalog = make_catalog();
  return catalog;
}

std::optional<MethodSpec> find_builtin(std::string_view name) {
  const auto& catalog = builtin_catalog();
  auto it = std::find_if(catalog.begin(), catalog.end(), [&](const MethodSpec& m) { return m.name == name; });
  if (it == catalog.end()) return std::nullopt;
  return *it;
}

}  // namespace genex
