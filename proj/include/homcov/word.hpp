#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace homcov {

/// One letter of a free-group word: generator index in [1..rank] with a sign.
/// Encoded as a nonzero int, +i for x_i and -i for its inverse.
struct Letter {
	int generator = 1;
	int sign = +1;

	int encoded() const { return sign * generator; }
	static Letter decode(int v)
	{
		if (v == 0)
			throw std::invalid_argument("zero letter code");
		return Letter{std::abs(v), v > 0 ? +1 : -1};
	}
	bool operator==(const Letter& o) const = default;
};

/// Freely reduced word over generators x_1..x_rank. Construction reduces.
class Word {
public:
	Word() = default;
	explicit Word(std::vector<int> letters) { assign(std::move(letters)); }

	static Word generator(int i) { return Word(std::vector<int>{i}); }

	const std::vector<int>& letters() const { return letters_; }
	std::size_t length() const { return letters_.size(); }
	bool empty() const { return letters_.empty(); }

	/// Largest generator index appearing (0 for the empty word).
	int max_generator() const
	{
		int m = 0;
		for (int v : letters_)
			m = std::max(m, std::abs(v));
		return m;
	}

	Word inverse() const
	{
		std::vector<int> rev(letters_.rbegin(), letters_.rend());
		for (int& v : rev)
			v = -v;
		Word w;
		w.letters_ = std::move(rev); // reversal of a reduced word is reduced
		return w;
	}

	Word operator*(const Word& o) const
	{
		std::vector<int> cat = letters_;
		cat.insert(cat.end(), o.letters_.begin(), o.letters_.end());
		return Word(std::move(cat));
	}

	bool operator==(const Word& o) const = default;
	bool operator<(const Word& o) const
	{
		if (letters_.size() != o.letters_.size())
			return letters_.size() < o.letters_.size();
		return letters_ < o.letters_;
	}

	/// Exponent-sum vector of length `rank`.
	std::vector<long long> exponent_vector(int rank) const
	{
		std::vector<long long> e(rank, 0);
		for (int v : letters_) {
			int g = std::abs(v);
			if (g > rank)
				throw std::invalid_argument("letter outside declared rank");
			e[g - 1] += v > 0 ? 1 : -1;
		}
		return e;
	}

private:
	void assign(std::vector<int> raw)
	{
		letters_.clear();
		letters_.reserve(raw.size());
		for (int v : raw) {
			if (v == 0)
				throw std::invalid_argument("zero letter code");
			if (!letters_.empty() && letters_.back() == -v)
				letters_.pop_back();
			else
				letters_.push_back(v);
		}
	}

	std::vector<int> letters_;
};

inline Word reduce(const std::vector<Letter>& raw)
{
	std::vector<int> codes;
	codes.reserve(raw.size());
	for (const Letter& l : raw)
		codes.push_back(l.encoded());
	return Word(std::move(codes));
}

/// Word syntax: lowercase a..z are generators 1..26, uppercase their
/// inverses; ranks above 26 use "g3" / "G3". "1" denotes the empty word.
inline std::string word_to_string(const Word& w, int rank = 0)
{
	if (rank == 0)
		rank = w.max_generator();
	if (w.empty())
		return "1";
	std::string s;
	for (int v : w.letters()) {
		int g = std::abs(v);
		if (rank <= 26) {
			char c = static_cast<char>('a' + g - 1);
			s += v > 0 ? c : static_cast<char>(std::toupper(c));
		} else {
			s += (v > 0 ? "g" : "G") + std::to_string(g);
		}
	}
	return s;
}

/// Inverse of word_to_string. rank <= 0 means "accept any letter a..z".
inline Word word_from_string(const std::string& text, int rank = -1)
{
	std::vector<int> codes;
	std::size_t i = 0;
	if (text == "1")
		return Word();
	while (i < text.size()) {
		char c = text[i];
		if (std::isspace(static_cast<unsigned char>(c))) {
			++i;
			continue;
		}
		int g = 0, sign = +1;
		if (c == 'g' || c == 'G') {
			sign = c == 'g' ? +1 : -1;
			std::size_t j = i + 1;
			while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
				++j;
			if (j == i + 1)
				throw std::invalid_argument("expected digits after '" + std::string(1, c) + "'");
			g = std::stoi(text.substr(i + 1, j - i - 1));
			i = j;
		} else if (std::isalpha(static_cast<unsigned char>(c))) {
			sign = std::islower(static_cast<unsigned char>(c)) ? +1 : -1;
			g = std::tolower(static_cast<unsigned char>(c)) - 'a' + 1;
			++i;
		} else {
			throw std::invalid_argument("unexpected character '" + std::string(1, c) + "' in word");
		}
		if (g <= 0 || (rank > 0 && g > rank))
			throw std::invalid_argument("generator index " + std::to_string(g) + " out of range");
		codes.push_back(sign * g);
	}
	return Word(std::move(codes));
}

} // namespace homcov
