#pragma once

#include <cmath>
#include <cstddef>

#include "coeffbound/kernels.hpp"

// Shared expression graph for the batch kernels. Every form is templated
// on the element type V: plain double for the scalar lane, a SIMD pack
// (defining the same operators and a VOps specialization) for the vector
// lanes. Both lanes execute identical arithmetic on identical operand
// orders, so with FP contraction disabled their results agree bitwise.
namespace coeffbound::kernels::forms {

template <class V>
struct VOps;

template <>
struct VOps<double> {
  static double broadcast(double x) { return x; }
  static double sqrt(double x) { return std::sqrt(x); }
  static double abs(double x) { return std::fabs(x); }
};

template <class V>
struct C {
  V re, im;
};

template <class V>
inline C<V> cadd(C<V> a, C<V> b) {
  return {a.re + b.re, a.im + b.im};
}

template <class V>
inline C<V> cmul(C<V> a, C<V> b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

template <class V>
inline C<V> cscale(V s, C<V> a) {
  return {s * a.re, s * a.im};
}

template <class V>
inline V cnorm(C<V> a) {
  return a.re * a.re + a.im * a.im;
}

// Everything about lambda the forms need, precomputed once per call.
struct LamConsts {
  double lam;
  double q1, q2, q3, q4;
  double w0;     // lam^2 (1 - lam)^2
  double w1;     // 3 lam^3 - 2 lam^2
  double lam2;   // lam^2
  double zlast;  // 1 + lam
  double bigk;   // 3 lam^3 + lam + 1
  double base0, base1, base2, base3, cross;
  double fa, fb, fd;       // F(lambda, t) coefficients
  double final_value;      // 4 q4^2
};

inline LamConsts lam_consts(double l) {
  LamConsts k;
  const double l2 = l * l;
  const double l3 = l2 * l;
  const double l4 = l2 * l2;
  k.lam = l;
  k.q1 = 1.0 + l;
  k.q2 = k.q1 + l2;
  k.q3 = k.q2 + l3;
  k.q4 = k.q3 + l4;
  k.w0 = l2 * (1.0 - l) * (1.0 - l);
  k.w1 = 3.0 * l3 - 2.0 * l2;
  k.lam2 = l2;
  k.zlast = 1.0 + l;
  k.bigk = 3.0 * l3 + l + 1.0;
  k.base0 = l2 * (l2 + 2.0 * l + 2.0);
  k.base1 = (3.0 * l3 - 2.0 * l2) * (3.0 * l3 + 2.0 * l2 + 2.0 * l + 2.0);
  k.base2 = 4.0 * l2 * (l2 + l + 1.0);
  k.base3 = (1.0 + l) * (1.0 + l);
  k.cross = 2.0 * l2 * (3.0 * l3 + 3.0 * l2 + 2.0 * l - 1.0);
  k.fa = 3.0 * l4 * (3.0 * l2 - 2.0 * l - 1.0);
  k.fb = 2.0 * l2 * (3.0 * l3 + 4.0 * l2 + 2.0 * l - 1.0);
  k.fd = -l2 * (9.0 * l4 + 5.0 * l2 + 4.0 * l - 2.0);
  k.final_value = 4.0 * k.q4 * k.q4;
  return k;
}

template <class V>
struct Pack {
  C<V> c1, c2, c3, c4;
};

inline Pack<double> load1(const CoeffBatch& b, std::size_t i) {
  return {{b.c1re[i], b.c1im[i]},
          {b.c2re[i], b.c2im[i]},
          {b.c3re[i], b.c3im[i]},
          {b.c4re[i], b.c4im[i]}};
}

template <class V>
struct PZ {
  C<V> p1, p2, p3, p4;  // Caratheodory coefficients 2(c + ...)
  C<V> z0, z1, z2, z3;  // witness weights
};

template <class V>
inline PZ<V> make_pz(const LamConsts& k, const Pack<V>& c) {
  const V two = VOps<V>::broadcast(2.0);
  const V three = VOps<V>::broadcast(3.0);
  const C<V> c1sq = cmul(c.c1, c.c1);
  const C<V> c1cu = cmul(c1sq, c.c1);
  const C<V> c1c2 = cmul(c.c1, c.c2);
  PZ<V> s;
  s.p1 = cscale(two, c.c1);
  s.p2 = cscale(two, cadd(c.c2, c1sq));
  s.p3 = cscale(two, cadd(cadd(c.c3, cscale(two, c1c2)), c1cu));
  s.p4 = cscale(two, cadd(cadd(cadd(c.c4, cscale(two, cmul(c.c1, c.c3))),
                               cadd(cmul(c.c2, c.c2), cscale(three, cmul(c1sq, c.c2)))),
                          cmul(c1sq, c1sq)));
  s.z0 = cscale(VOps<V>::broadcast(k.w0), c1cu);
  s.z1 = cadd(cscale(VOps<V>::broadcast(k.lam2), c.c2),
              cscale(VOps<V>::broadcast(k.w1), c1sq));
  s.z2 = cscale(VOps<V>::broadcast(2.0 * k.lam2), c.c1);
  s.z3 = {VOps<V>::broadcast(k.zlast), VOps<V>::broadcast(0.0)};
  return s;
}

template <class V>
inline V form_abs2_a5(const LamConsts& k, const Pack<V>& c) {
  const V two = VOps<V>::broadcast(2.0);
  const C<V> c1sq = cmul(c.c1, c.c1);
  const C<V> a5 =
      cadd(cadd(cscale(VOps<V>::broadcast(k.q1), c.c4),
                cscale(VOps<V>::broadcast(k.q2),
                       cadd(cscale(two, cmul(c.c1, c.c3)), cmul(c.c2, c.c2)))),
           cadd(cscale(VOps<V>::broadcast(3.0 * k.q3), cmul(c1sq, c.c2)),
                cscale(VOps<V>::broadcast(k.q4), cmul(c1sq, c1sq))));
  return cnorm(a5);
}

template <class V>
inline V form_identity_rel(const LamConsts& k, const Pack<V>& c) {
  const PZ<V> s = make_pz(k, c);
  const C<V> lsum = cadd(cadd(cmul(s.p1, s.z0), cmul(s.p2, s.z1)),
                         cadd(cmul(s.p3, s.z2), cmul(s.p4, s.z3)));
  const V bigl = cnorm(lsum);
  const V a5sq = form_abs2_a5(k, c);
  const V one = VOps<V>::broadcast(1.0);
  const V four = VOps<V>::broadcast(4.0);
  return VOps<V>::abs(bigl - four * a5sq) / (one + bigl);
}

// The four squared-modulus groups shared by R and the Leverenz value.
template <class V>
struct RGroups {
  V head0, head1, head2, head3;  // |2 z_j + tail_j|^2
  V tail0, tail1, tail2, tail3;  // |sum p_{k+1} z_{k+j}|^2
};

template <class V>
inline RGroups<V> make_rgroups(const PZ<V>& s) {
  const V two = VOps<V>::broadcast(2.0);
  const C<V> t0 = cadd(cadd(cmul(s.p1, s.z0), cmul(s.p2, s.z1)),
                       cadd(cmul(s.p3, s.z2), cmul(s.p4, s.z3)));
  const C<V> t1 =
      cadd(cadd(cmul(s.p1, s.z1), cmul(s.p2, s.z2)), cmul(s.p3, s.z3));
  const C<V> t2 = cadd(cmul(s.p1, s.z2), cmul(s.p2, s.z3));
  const C<V> t3 = cmul(s.p1, s.z3);
  RGroups<V> g;
  g.head0 = cnorm(cadd(cscale(two, s.z0), t1));
  g.head1 = cnorm(cadd(cscale(two, s.z1), t2));
  g.head2 = cnorm(cadd(cscale(two, s.z2), t3));
  g.head3 = cnorm(cscale(two, s.z3));
  g.tail0 = cnorm(t0);
  g.tail1 = cnorm(t1);
  g.tail2 = cnorm(t2);
  g.tail3 = cnorm(t3);
  return g;
}

// leverenz_form(p, witness) = R - L, grouped exactly as the j-sum.
template <class V>
inline V form_leverenz_witness(const LamConsts& k, const Pack<V>& c) {
  const RGroups<V> g = make_rgroups(make_pz(k, c));
  return (g.head0 - g.tail0) + (g.head1 - g.tail1) + (g.head2 - g.tail2) +
         (g.head3 - g.tail3);
}

// R itself: the same groups, but j = 0 keeps its full head and the
// |sum p_{k+1} z_k|^2 term of j = 0 is L, which R does not subtract.
template <class V>
inline V form_r_exact(const RGroups<V>& g) {
  return (g.head0 - g.tail1) + (g.head1 - g.tail2) + (g.head2 - g.tail3) +
         g.head3;
}

template <class V>
inline void form_chain(const LamConsts& k, const Pack<V>& c, V& r_exact,
                       V& after_ps, V& after_c2, V& f_form, V& final_value) {
  const V one = VOps<V>::broadcast(1.0);
  const V four = VOps<V>::broadcast(4.0);
  r_exact = form_r_exact(make_rgroups(make_pz(k, c)));

  const V t = cnorm(c.c1);
  const V s = VOps<V>::sqrt(t);
  const V ac2 = VOps<V>::sqrt(cnorm(c.c2));
  const V va = VOps<V>::broadcast(k.w0) * (s * t) + VOps<V>::broadcast(k.bigk);
  const V akk = va * va - VOps<V>::broadcast(k.bigk * k.bigk);
  const V common = VOps<V>::broadcast(k.base1) * (t * t) +
                   VOps<V>::broadcast(k.base2) * t +
                   VOps<V>::broadcast(k.base3);
  after_ps = four * (akk + VOps<V>::broadcast(k.base0) * (ac2 * ac2) + common +
                     VOps<V>::broadcast(k.cross) * (ac2 * t));
  const V c2b = one - t;
  after_c2 = four * (akk + VOps<V>::broadcast(k.base0) * (c2b * c2b) + common +
                     VOps<V>::broadcast(k.cross) * (c2b * t));
  f_form = four * (va * va + ((VOps<V>::broadcast(k.fa) * t +
                               VOps<V>::broadcast(k.fb)) *
                                  t +
                              VOps<V>::broadcast(k.fd)));
  final_value = VOps<V>::broadcast(k.final_value);
}

template <class V>
inline V form_f(const LamConsts& k, V t) {
  return (VOps<V>::broadcast(k.fa) * t + VOps<V>::broadcast(k.fb)) * t +
         VOps<V>::broadcast(k.fd);
}

template <class V>
inline V form_ps(double mu, double nu, const Pack<V>& c) {
  const C<V> c1sq = cmul(c.c1, c.c1);
  const C<V> g =
      cadd(cadd(c.c3, cscale(VOps<V>::broadcast(mu), cmul(c.c1, c.c2))),
           cscale(VOps<V>::broadcast(nu), cmul(c1sq, c.c1)));
  return VOps<V>::sqrt(cnorm(g));
}

}  // namespace coeffbound::kernels::forms
