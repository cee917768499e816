#pragma once

#include "homcov/matrix.hpp"
#include "homcov/word.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace homcov {

/// Endomorphism of F_rank given by generator images; certified invertible
/// only when inverse images are supplied (then both compositions are
/// checked to fix every generator). The abelianized matrix must always
/// have determinant +-1.
class FreeAutomorphism {
public:
	FreeAutomorphism(int rank, std::vector<Word> images,
	                 std::optional<std::vector<Word>> inverse_images = std::nullopt)
	    : rank_(rank), images_(std::move(images)), inverse_images_(std::move(inverse_images))
	{
		if (rank_ < 1)
			throw std::invalid_argument("rank must be at least 1");
		if (images_.size() != static_cast<std::size_t>(rank_))
			throw std::invalid_argument("need exactly one image per generator");
		for (const Word& w : images_)
			if (w.max_generator() > rank_)
				throw std::invalid_argument("image uses generator outside rank");
		if (det_abelianized() != 1 && det_abelianized() != -1)
			throw std::invalid_argument("abelianized matrix is not unimodular");
		if (inverse_images_) {
			if (inverse_images_->size() != static_cast<std::size_t>(rank_))
				throw std::invalid_argument("need exactly one inverse image per generator");
			FreeAutomorphism inv(rank_, *inverse_images_);
			for (int i = 1; i <= rank_; ++i) {
				if (apply(inv.image(i)) != Word::generator(i) ||
				    inv.apply(image(i)) != Word::generator(i))
					throw std::invalid_argument("inverse images do not certify invertibility");
			}
		}
	}

	static FreeAutomorphism identity(int rank)
	{
		std::vector<Word> imgs, invs;
		for (int i = 1; i <= rank; ++i) {
			imgs.push_back(Word::generator(i));
			invs.push_back(Word::generator(i));
		}
		return FreeAutomorphism(rank, imgs, invs);
	}

	int rank() const { return rank_; }
	const Word& image(int i) const { return images_.at(i - 1); }
	const std::vector<Word>& images() const { return images_; }
	bool certified() const { return inverse_images_.has_value(); }
	const std::vector<Word>& inverse_images() const
	{
		if (!inverse_images_)
			throw std::logic_error("automorphism carries no certified inverse");
		return *inverse_images_;
	}

	FreeAutomorphism inverse() const
	{
		return FreeAutomorphism(rank_, inverse_images(), images_);
	}

	/// Substitutes images letterwise and freely reduces.
	Word apply(const Word& w) const
	{
		if (w.max_generator() > rank_)
			throw std::invalid_argument("word rank exceeds automorphism rank");
		std::vector<int> out;
		for (int v : w.letters()) {
			const Word& img = image(std::abs(v));
			if (v > 0)
				out.insert(out.end(), img.letters().begin(), img.letters().end());
			else {
				Word winv = img.inverse();
				out.insert(out.end(), winv.letters().begin(), winv.letters().end());
			}
		}
		return Word(std::move(out));
	}

	/// Column j is the exponent-sum vector of the image of x_j.
	IntMatrix abelianized() const
	{
		IntMatrix m(rank_, rank_);
		for (int j = 1; j <= rank_; ++j) {
			auto e = image(j).exponent_vector(rank_);
			for (int i = 0; i < rank_; ++i)
				m(i, j - 1) = e[i];
		}
		return m;
	}

	bool operator==(const FreeAutomorphism& o) const
	{
		return rank_ == o.rank_ && images_ == o.images_;
	}

private:
	Int det_abelianized() const
	{
		IntMatrix m = abelianized();
		// Fraction-free elimination on a copy; small ranks only.
		int n = rank_;
		Int det = 1;
		for (int c = 0; c < n; ++c) {
			int p = -1;
			for (int r = c; r < n; ++r)
				if (m(r, c) != 0) {
					p = r;
					break;
				}
			if (p < 0)
				return 0;
			if (p != c) {
				for (int j = 0; j < n; ++j)
					std::swap(m(p, j), m(c, j));
				det = -det;
			}
			for (int r = c + 1; r < n; ++r) {
				while (m(r, c) != 0) {
					Int q = m(r, c) / m(c, c);
					for (int j = c; j < n; ++j)
						m(r, j) -= q * m(c, j);
					if (m(r, c) != 0) {
						for (int j = c; j < n; ++j)
							std::swap(m(r, j), m(c, j));
						det = -det;
					}
				}
			}
		}
		for (int c = 0; c < n; ++c)
			det *= m(c, c);
		return det;
	}

	int rank_;
	std::vector<Word> images_;
	std::optional<std::vector<Word>> inverse_images_;
};

/// outer o inner: images of the result are outer applied to inner's images.
inline FreeAutomorphism compose(const FreeAutomorphism& outer, const FreeAutomorphism& inner)
{
	if (outer.rank() != inner.rank())
		throw std::invalid_argument("composition rank mismatch");
	std::vector<Word> imgs;
	for (int i = 1; i <= inner.rank(); ++i)
		imgs.push_back(outer.apply(inner.image(i)));
	std::optional<std::vector<Word>> invs;
	if (outer.certified() && inner.certified()) {
		FreeAutomorphism inner_inv = inner.inverse();
		std::vector<Word> v;
		for (int i = 1; i <= inner.rank(); ++i)
			v.push_back(inner_inv.apply(outer.inverse_images()[i - 1]));
		invs = std::move(v);
	}
	return FreeAutomorphism(outer.rank(), std::move(imgs), std::move(invs));
}

struct ParseError : std::runtime_error {
	int line, column;
	ParseError(int line, int column, const std::string& what)
	    : std::runtime_error("line " + std::to_string(line) + ", column " +
	                         std::to_string(column) + ": " + what),
	      line(line), column(column)
	{
	}
};

/// Result of parsing an automorphism file; keeps the generator names the
/// file used so diagnostics and output can echo them.
struct ParsedAutomorphism {
	FreeAutomorphism aut;
	std::vector<std::string> names;
};

namespace detail {

struct NameTable {
	std::map<std::string, int> index; // name -> generator (1-based)
	std::vector<std::string> names;

	int lookup(const std::string& name) const
	{
		auto it = index.find(name);
		return it == index.end() ? 0 : it->second;
	}
	int declare(const std::string& name)
	{
		auto [it, fresh] = index.emplace(name, static_cast<int>(names.size()) + 1);
		if (fresh)
			names.push_back(name);
		return it->second;
	}
};

inline Word parse_named_word(const std::string& text, const NameTable& table, int line,
                             int col0)
{
	std::vector<int> codes;
	std::size_t i = 0;
	while (i < text.size()) {
		char c = text[i];
		int col = col0 + static_cast<int>(i);
		if (std::isspace(static_cast<unsigned char>(c))) {
			++i;
			continue;
		}
		if (c == '1' && codes.empty()) { // explicit empty word
			++i;
			continue;
		}
		int sign;
		std::string name;
		if ((c == 'g' || c == 'G') && i + 1 < text.size() &&
		    std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
			sign = c == 'g' ? +1 : -1;
			std::size_t j = i + 1;
			while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
				++j;
			name = "g" + text.substr(i + 1, j - i - 1);
			i = j;
		} else if (std::isalpha(static_cast<unsigned char>(c))) {
			sign = std::islower(static_cast<unsigned char>(c)) ? +1 : -1;
			name = std::string(1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
			++i;
		} else {
			throw ParseError(line, col, std::string("unexpected character '") + c + "'");
		}
		int g = table.lookup(name);
		if (g == 0)
			throw ParseError(line, col, "generator '" + name + "' has no defining line");
		codes.push_back(sign * g);
		if (codes.size() >= 2) {
			auto k = codes.size();
			if (codes[k - 1] == -codes[k - 2])
				throw ParseError(line, col, "image word is not freely reduced");
		}
	}
	return Word(std::move(codes));
}

} // namespace detail

/// Automorphism file format: one line per generator, "x -> xyX". The
/// left-hand sides, in order of appearance, define the generators. An
/// optional "inverse:" line followed by the same number of lines supplies
/// certified inverse images. '#' starts a comment.
inline ParsedAutomorphism parse_automorphism_text(const std::string& text)
{
	detail::NameTable table;
	std::vector<std::pair<std::string, std::pair<int, int>>> rhs; // body + (line, col)
	std::vector<std::pair<std::string, std::pair<int, int>>> inv_rhs;
	bool in_inverse = false;

	std::istringstream is(text);
	std::string raw;
	int lineno = 0;
	while (std::getline(is, raw)) {
		++lineno;
		std::string line = raw.substr(0, raw.find('#'));
		auto notspace = [](unsigned char c) { return !std::isspace(c); };
		if (std::find_if(line.begin(), line.end(), notspace) == line.end())
			continue;
		if (line.find("inverse:") != std::string::npos) {
			if (in_inverse)
				throw ParseError(lineno, 1, "duplicate inverse section");
			in_inverse = true;
			continue;
		}
		auto arrow = line.find("->");
		if (arrow == std::string::npos)
			throw ParseError(lineno, 1, "expected 'generator -> word'");
		std::string lhs = line.substr(0, arrow);
		std::string body = line.substr(arrow + 2);
		// Trim the LHS.
		std::size_t b = lhs.find_first_not_of(" \t");
		std::size_t e = lhs.find_last_not_of(" \t");
		if (b == std::string::npos)
			throw ParseError(lineno, 1, "missing generator name before '->'");
		lhs = lhs.substr(b, e - b + 1);
		bool gform = lhs.size() >= 2 && lhs[0] == 'g' &&
		             std::isdigit(static_cast<unsigned char>(lhs[1]));
		if (!gform && (lhs.size() != 1 || !std::islower(static_cast<unsigned char>(lhs[0]))))
			throw ParseError(lineno, static_cast<int>(b) + 1,
			                 "generator name must be a lowercase letter or gN");
		int bodycol = static_cast<int>(arrow) + 3;
		if (in_inverse)
			inv_rhs.push_back({body, {lineno, bodycol}});
		else {
			if (table.lookup(lhs) != 0)
				throw ParseError(lineno, static_cast<int>(b) + 1,
				                 "generator '" + lhs + "' defined twice");
			table.declare(lhs);
			rhs.push_back({body, {lineno, bodycol}});
		}
	}
	if (rhs.empty())
		throw ParseError(lineno ? lineno : 1, 1, "no generator lines found");
	if (in_inverse && inv_rhs.size() != rhs.size())
		throw ParseError(lineno, 1, "inverse section must list every generator");

	std::vector<Word> images;
	for (auto& [body, pos] : rhs)
		images.push_back(detail::parse_named_word(body, table, pos.first, pos.second));
	std::optional<std::vector<Word>> invs;
	if (in_inverse) {
		std::vector<Word> v;
		for (auto& [body, pos] : inv_rhs)
			v.push_back(detail::parse_named_word(body, table, pos.first, pos.second));
		invs = std::move(v);
	}
	int rank = static_cast<int>(rhs.size());
	for (std::size_t k = 0; k < images.size(); ++k)
		if (images[k].max_generator() > rank)
			throw ParseError(rhs[k].second.first, rhs[k].second.second,
			                 "image uses a generator with no defining line");
	try {
		return ParsedAutomorphism{FreeAutomorphism(rank, images, invs), table.names};
	} catch (const std::invalid_argument& e) {
		throw ParseError(lineno, 1, e.what());
	}
}

inline std::string automorphism_to_text(const FreeAutomorphism& aut,
                                        const std::vector<std::string>* names = nullptr)
{
	auto name_of = [&](int i) {
		if (names && i <= static_cast<int>(names->size()))
			return (*names)[i - 1];
		return aut.rank() <= 26 ? std::string(1, static_cast<char>('a' + i - 1))
		                        : "g" + std::to_string(i);
	};
	auto word_str = [&](const Word& w) {
		if (w.empty())
			return std::string("1");
		std::string s;
		for (int v : w.letters()) {
			std::string nm = name_of(std::abs(v));
			if (v < 0) {
				if (nm.size() == 1)
					nm[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(nm[0])));
				else
					nm[0] = 'G';
			}
			s += nm;
		}
		return s;
	};
	std::string out;
	for (int i = 1; i <= aut.rank(); ++i)
		out += name_of(i) + " -> " + word_str(aut.image(i)) + "\n";
	if (aut.certified()) {
		out += "inverse:\n";
		for (int i = 1; i <= aut.rank(); ++i)
			out += name_of(i) + " -> " + word_str(aut.inverse_images()[i - 1]) + "\n";
	}
	return out;
}

} // namespace homcov
