#pragma once

#include "homcov/charpoly.hpp"
#include "homcov/cyclotomic.hpp"
#include "homcov/intpoly.hpp"
#include "homcov/linalg.hpp"
#include "homcov/numeric.hpp"

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace homcov {

enum class SpectralVerdict { AllRootsOfUnity, OffUnitCircle };

/// Externally checkable spectral certificate: the exact characteristic
/// polynomial, the verdict, a witness factor certified coprime to every
/// cyclotomic of admissible degree, rational spectral-radius brackets,
/// and advisory floating roots.
struct SpectralReport {
	IntPoly char_poly;
	SpectralVerdict verdict = SpectralVerdict::AllRootsOfUnity;
	IntPoly witness;               // nonempty iff OffUnitCircle
	Rat radius_low = 1, radius_high = 1; // bracket for the spectral radius
	std::vector<Cx> approx_roots;
	std::vector<double> root_errors;

	bool all_roots_of_unity() const { return verdict == SpectralVerdict::AllRootsOfUnity; }
};

namespace detail {

/// Number of roots of p strictly inside the unit disk via the
/// Schur-Cohn transform chain; nullopt when the chain degenerates
/// (some root on the circle or a vanishing transform).
inline std::optional<int> schur_cohn_inside(std::vector<Int> c)
{
	while (!c.empty() && c.back() == 0)
		c.pop_back();
	if (c.empty())
		return std::nullopt;
	int deg = static_cast<int>(c.size()) - 1;
	// Strip roots at the origin: they count as inside.
	int at_zero = 0;
	while (!c.empty() && c.front() == 0) {
		c.erase(c.begin());
		++at_zero;
	}
	deg = static_cast<int>(c.size()) - 1;
	int inside = at_zero;
	int negatives = 0;
	int product_sign = 1;
	for (int step = 0; step < deg; ++step) {
		const std::size_t n = c.size() - 1;
		// T[f] = a_0 f - a_n f*; constant term gamma = a_0^2 - a_n^2.
		Int a0 = c.front(), an = c.back();
		Int gamma = a0 * a0 - an * an;
		if (gamma == 0)
			return std::nullopt;
		std::vector<Int> t(n, 0);
		for (std::size_t k = 0; k < n; ++k)
			t[k] = a0 * c[k] - an * c[n - k];
		while (!t.empty() && t.back() == 0)
			t.pop_back();
		// Marden's count needs the degree to drop by exactly one per step.
		if (t.size() != n)
			return std::nullopt;
		// Keep coefficients primitive to tame growth.
		Int g = 0;
		for (const auto& v : t)
			g = int_gcd(g, v);
		if (g > 1)
			for (auto& v : t)
				v /= g;
		product_sign *= gamma < 0 ? -1 : 1;
		if (product_sign < 0)
			++negatives;
		c = std::move(t);
	}
	return inside + negatives;
}

/// Graeffe root-squaring: a monic-degree-preserving transform whose
/// roots are the squares of the input's roots. Breaks the structural
/// degeneracies of the Schur-Cohn chain (even polynomials and the like).
inline std::vector<Int> graeffe_step(const std::vector<Int>& c)
{
	const int d = static_cast<int>(c.size()) - 1;
	std::vector<Int> out(d + 1, 0);
	for (int k = 0; k <= d; ++k) {
		Int acc = 0;
		for (int i = 0; i <= 2 * k; ++i) {
			int j = 2 * k - i;
			if (i > d || j > d)
				continue;
			Int term = c[i] * c[j];
			acc += (j % 2 == 0) ? term : Int(-term);
		}
		out[k] = acc;
	}
	if (d % 2 == 1) // restore a positive leading coefficient
		for (auto& v : out)
			v = -v;
	return out;
}

/// Roots of p with modulus strictly greater than r, for rational r > 0;
/// falls back to Graeffe iterates when the Schur-Cohn chain degenerates,
/// and reports nullopt when r appears to hit a root modulus.
inline std::optional<int> roots_outside_radius(const IntPoly& p, const Rat& r)
{
	if (p.is_zero())
		return std::nullopt;
	std::vector<Int> c(p.coeffs());
	Rat radius = r;
	const int d = p.degree();
	for (int attempt = 0; attempt < 4; ++attempt) {
		// q(z) = f(radius * z) cleared to integer coefficients.
		Int num = numerator(radius), den = denominator(radius);
		std::vector<Int> scaled(c.size());
		Int np = 1;
		for (std::size_t k = 0; k < c.size(); ++k) {
			scaled[k] = c[k] * np;
			np *= num;
		}
		Int dp = 1;
		for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
			scaled[k] *= dp;
			dp *= den;
		}
		auto inside = schur_cohn_inside(scaled);
		if (inside)
			return d - *inside;
		c = graeffe_step(c);
		radius = radius * radius;
	}
	return std::nullopt;
}

} // namespace detail

/// Rational bracket [low, high] around the largest root modulus of a
/// polynomial already certified to have a root outside the unit circle
/// and no cyclotomic factors. Bisection with Schur-Cohn counting;
/// degenerate radii are nudged. Refinement stops at the target width or
/// when coefficient growth exceeds the bit budget.
inline std::pair<Rat, Rat> bracket_spectral_radius(const IntPoly& p,
                                                   const Rat& target_width = Rat(1, 2000000000),
                                                   int max_steps = 90)
{
	// Cauchy bound: 1 + max |a_i| / |lead|.
	Int maxc = 0;
	for (const auto& a : p.coeffs()) {
		Int m = a < 0 ? Int(-a) : a;
		if (m > maxc)
			maxc = m;
	}
	Rat lo = 1;
	Rat hi = Rat(maxc, p.leading() < 0 ? -p.leading() : p.leading()) + 1;
	for (int step = 0; step < max_steps && hi - lo > target_width; ++step) {
		Rat mid = (lo + hi) / 2;
		std::optional<int> outside;
		Rat delta = (hi - lo) / 4096;
		Rat probe = mid;
		for (int tries = 0; tries < 24 && !outside; ++tries) {
			outside = detail::roots_outside_radius(p, probe);
			if (!outside)
				probe = mid + delta * (tries + 1);
		}
		if (!outside)
			break;
		if (*outside >= 1)
			lo = probe;
		else
			hi = probe;
	}
	return {lo, hi};
}

/// Exact Kronecker criterion: every eigenvalue is a root of unity iff
/// the characteristic polynomial is a product of cyclotomic polynomials,
/// tested by exact division against every cyclotomic of degree at most
/// the dimension (the Euler-phi inverse table supplies the candidate
/// orders). Otherwise the non-cyclotomic remainder witnesses an
/// eigenvalue off the unit circle and its largest modulus is bracketed.
inline SpectralReport kronecker_test(const IntMatrix& m)
{
	SpectralReport rep;
	rep.char_poly = char_poly(m);
	IntPoly work = rep.char_poly;

	// Split off zero eigenvalues: t^k factors are off the unit circle.
	int zero_roots = 0;
	while (!work.is_zero() && work.coeff(0) == 0) {
		std::vector<Int> c(work.coeffs().begin() + 1, work.coeffs().end());
		work = IntPoly(std::move(c));
		++zero_roots;
	}
	for (int order : cyclotomic_orders_for_dimension(work.degree())) {
		const IntPoly& phi = cyclotomic_int_poly(order);
		if (phi.degree() > work.degree())
			continue;
		while (work.degree() >= phi.degree() && divides(phi, work))
			work = exact_divide(work, phi);
	}
	if (work.degree() == 0 && zero_roots == 0) {
		rep.verdict = SpectralVerdict::AllRootsOfUnity;
		rep.radius_low = rep.radius_high = 1;
	} else {
		rep.verdict = SpectralVerdict::OffUnitCircle;
		if (work.degree() > 0) {
			rep.witness = work;
			auto [lo, hi] = bracket_spectral_radius(work);
			rep.radius_low = lo;
			rep.radius_high = hi;
		} else {
			// Only zero eigenvalues break the criterion; the nonzero
			// spectrum is cyclotomic.
			rep.witness = IntPoly({Int(0), Int(1)}); // t
			rep.radius_low = rep.radius_high =
			    rep.char_poly.degree() > zero_roots ? 1 : 0;
		}
	}

	// Advisory floating roots from the companion matrix; never allowed
	// to disturb the exact verdict above.
	if (rep.char_poly.degree() >= 1) {
		try {
			Matrix<Cx> comp(rep.char_poly.degree(), rep.char_poly.degree());
			for (int i = 1; i < rep.char_poly.degree(); ++i)
				comp(i, i - 1) = 1.0;
			for (int i = 0; i < rep.char_poly.degree(); ++i)
				comp(i, rep.char_poly.degree() - 1) =
				    -rep.char_poly.coeff(i).convert_to<double>();
			rep.approx_roots = complex_eigenvalues(comp);
			for (const Cx& z : rep.approx_roots) {
				// Newton correction magnitude as the error estimate.
				Cx pv = 0.0, dv = 0.0;
				for (int k = rep.char_poly.degree(); k >= 0; --k) {
					dv = dv * z + pv;
					pv = pv * z + rep.char_poly.coeff(k).convert_to<double>();
				}
				rep.root_errors.push_back(std::abs(dv) > 0 ? std::abs(pv / dv)
				                                           : 1.0);
			}
		} catch (const std::runtime_error&) {
			rep.approx_roots.clear();
			rep.root_errors.clear();
		}
	}
	return rep;
}

/// Serialization: every verdict is re-checkable from this text alone.
inline std::string spectral_report_to_text(const SpectralReport& rep)
{
	std::ostringstream os;
	os << "spectral-report\n";
	os << "charpoly " << rep.char_poly.degree();
	for (const auto& c : rep.char_poly.coeffs())
		os << " " << c;
	os << "\n";
	os << "verdict "
	   << (rep.verdict == SpectralVerdict::AllRootsOfUnity ? "AllRootsOfUnity"
	                                                       : "OffUnitCircle")
	   << "\n";
	if (!rep.witness.is_zero()) {
		os << "witness " << rep.witness.degree();
		for (const auto& c : rep.witness.coeffs())
			os << " " << c;
		os << "\n";
	}
	os << "radius-low " << to_string(rep.radius_low) << "\n";
	os << "radius-high " << to_string(rep.radius_high) << "\n";
	os << "roots " << rep.approx_roots.size() << "\n";
	for (std::size_t i = 0; i < rep.approx_roots.size(); ++i)
		os << rep.approx_roots[i].real() << " " << rep.approx_roots[i].imag() << " "
		   << rep.root_errors[i] << "\n";
	os << "end\n";
	return os.str();
}

namespace detail {

/// Monic gcd over a field, on low-first coefficient vectors.
template <class F>
std::vector<F> field_poly_gcd(std::vector<F> a, std::vector<F> b)
{
	auto trim = [](std::vector<F>& p) {
		while (!p.empty() && p.back() == F(0))
			p.pop_back();
	};
	trim(a);
	trim(b);
	while (!b.empty()) {
		// a mod b
		while (a.size() >= b.size() && !a.empty()) {
			F c = a.back() / b.back();
			std::size_t shift = a.size() - b.size();
			for (std::size_t i = 0; i < b.size(); ++i)
				a[shift + i] = a[shift + i] - c * b[i];
			a.pop_back();
			trim(a);
			if (a.empty())
				break;
		}
		std::swap(a, b);
	}
	if (!a.empty()) {
		F lead = a.back();
		for (auto& c : a)
			c = c / lead;
	}
	return a;
}

template <class F>
std::vector<F> poly_derivative_vec(const std::vector<F>& p)
{
	std::vector<F> d;
	for (std::size_t k = 1; k < p.size(); ++k)
		d.push_back(p[k] * F(static_cast<int>(k)));
	return d;
}

} // namespace detail

/// Exact eigenvalue-ratio degeneracy test: the set of k in (1, M] where
/// deg gcd(p_k, p_k') exceeds deg gcd(p_1, p_1'), with p_k the
/// characteristic polynomial of m^k. A nonempty result certifies
/// distinct eigenvalues with equal k-th powers.
template <class F>
std::set<int> ratio_degeneracy_test_field(const Matrix<F>& m, int bound)
{
	if (bound < 2)
		throw std::invalid_argument("ratio test needs a bound of at least 2");
	auto gcd_degree = [](const Matrix<F>& a) {
		auto p = berkowitz_char_poly(a);
		auto d = detail::poly_derivative_vec(p);
		auto g = detail::field_poly_gcd(p, d);
		return static_cast<int>(g.size()) - 1;
	};
	std::set<int> out;
	int base = gcd_degree(m);
	Matrix<F> power = m;
	for (int k = 2; k <= bound; ++k) {
		power = power * m;
		if (gcd_degree(power) > base)
			out.insert(k);
	}
	return out;
}

inline std::set<int> ratio_degeneracy_test(const IntMatrix& m, int bound)
{
	Matrix<Rat> q(m.rows(), m.cols());
	for (std::size_t i = 0; i < m.rows(); ++i)
		for (std::size_t j = 0; j < m.cols(); ++j)
			q(i, j) = Rat(m(i, j));
	return ratio_degeneracy_test_field(q, bound);
}

/// Explicit upper bound for the Jordan-Schur index: known sharp values
/// for small degrees (the binary icosahedral group forces 60 at degree
/// 2, and the Weyl-group peaks dominate through degree 8), then the
/// (n+1)! asymptotic made monotone by a running maximum. Conservative,
/// with no claim of sharpness in between.
inline Int jordan_schur_bound(int n)
{
	if (n < 1)
		throw std::invalid_argument("dimension must be positive");
	static const long long small_values[] = {1,     60,      360,     25920,
	                                         25920, 6531840, 6531840, 696729600};
	Int best = 0;
	for (int k = 1; k <= n; ++k) {
		Int v;
		if (k <= 8)
			v = small_values[k - 1];
		else {
			v = 1;
			for (int i = 2; i <= k + 1; ++i)
				v *= i;
		}
		if (v > best)
			best = v;
	}
	return best;
}

} // namespace homcov
