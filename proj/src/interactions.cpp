#include "oqs/interactions.hpp"

#include <stdexcept>

namespace oqs {

namespace {

// attach the free's exact-picture exponents as dressing frequencies
Tridiagonal dressedBy(const Tridiagonal& op, const Element& free) {
  const DiagonalPropagator* u = exactPropagator(free);
  if (!u) return op;
  return Tridiagonal(op.dim(), op.offset(),
                     std::vector<complex>(op.diagonal().begin(), op.diagonal().end()),
                     std::vector<complex>(op.upper().begin(), op.upper().end()),
                     std::vector<complex>(op.lower().begin(), op.lower().end()),
                     u->exponents);
}

int singleLegDim(const Element& e, const char* what) {
  if (e.legDims().size() != 1)
    throw std::invalid_argument(std::string(what) + " must be a one-leg element");
  return e.legDims()[0];
}

class JaynesCummings final : public Interaction, public HamiltonianTerms {
public:
  JaynesCummings(std::shared_ptr<const Element> qbit, std::shared_ptr<const Element> mode,
                 complex g, std::vector<ProductTerm> terms)
      : Interaction({std::move(qbit), std::move(mode)}, "JaynesCummings"),
        HamiltonianTerms(std::move(terms)),
        g_(g) {}

private:
  complex g_;
};

class TernaryCoupling final : public Interaction, public HamiltonianTerms {
public:
  TernaryCoupling(std::vector<std::shared_ptr<const Element>> frees,
                  std::vector<ProductTerm> terms)
      : Interaction(std::move(frees), "TernaryCoupling"), HamiltonianTerms(std::move(terms)) {}
};

}  // namespace

namespace jaynescummings {

Pars::Pars(ParameterTable& p, const std::string& prefix) {
  p.add("g", "Jaynes-Cummings coupling", g, prefix);
}

std::shared_ptr<const Interaction> make(std::shared_ptr<const Element> qbit,
                                        std::shared_ptr<const Element> mode,
                                        const Pars& p) {
  if (!qbit || !mode) throw std::invalid_argument("JaynesCummings constituent is null");
  if (singleLegDim(*qbit, "JaynesCummings qbit leg") != 2)
    throw std::invalid_argument("JaynesCummings expects a two-level first constituent");
  const int cutoff = singleLegDim(*mode, "JaynesCummings mode leg");

  const Tridiagonal sigma = dressedBy(ops::lowering(2), *qbit);
  const Tridiagonal sigmaDag = dressedBy(ops::raising(2), *qbit);
  const Tridiagonal a = dressedBy(ops::lowering(cutoff), *mode);
  const Tridiagonal aDag = dressedBy(ops::raising(cutoff), *mode);

  // -iH = conj(g) a sigma^dag - g a^dag sigma
  std::vector<ProductTerm> terms;
  if (p.g != complex{}) {
    terms.emplace_back(std::conj(p.g),
                       std::vector<std::pair<int, Tridiagonal>>{{0, sigmaDag}, {1, a}});
    terms.emplace_back(-p.g,
                       std::vector<std::pair<int, Tridiagonal>>{{0, sigma}, {1, aDag}});
  }
  return std::make_shared<JaynesCummings>(std::move(qbit), std::move(mode), p.g,
                                          std::move(terms));
}

}  // namespace jaynescummings

std::shared_ptr<const Interaction> makeTernaryCoupling(std::shared_ptr<const Element> f0,
                                                       std::shared_ptr<const Element> f1,
                                                       std::shared_ptr<const Element> f2,
                                                       complex coupling) {
  if (!f0 || !f1 || !f2) throw std::invalid_argument("ternary constituent is null");
  const int d0 = singleLegDim(*f0, "ternary leg 0");
  const int d1 = singleLegDim(*f1, "ternary leg 1");
  const int d2 = singleLegDim(*f2, "ternary leg 2");

  // -iH = -i coupling A B C - i conj(coupling) A^dag B^dag C^dag
  std::vector<ProductTerm> terms;
  if (coupling != complex{}) {
    const complex minusI{0, -1};
    terms.emplace_back(minusI * coupling, std::vector<std::pair<int, Tridiagonal>>{
                                              {0, dressedBy(ops::lowering(d0), *f0)},
                                              {1, dressedBy(ops::lowering(d1), *f1)},
                                              {2, dressedBy(ops::lowering(d2), *f2)}});
    terms.emplace_back(minusI * std::conj(coupling),
                       std::vector<std::pair<int, Tridiagonal>>{
                           {0, dressedBy(ops::raising(d0), *f0)},
                           {1, dressedBy(ops::raising(d1), *f1)},
                           {2, dressedBy(ops::raising(d2), *f2)}});
  }
  return std::make_shared<TernaryCoupling>(
      std::vector<std::shared_ptr<const Element>>{std::move(f0), std::move(f1),
                                                  std::move(f2)},
      std::move(terms));
}

}  // namespace oqs
