#pragma once

#include "homcov/automorphism.hpp"
#include "homcov/word.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace homcov {

/// A self-map of a finite graph sending vertices to vertices and edges
/// to edge paths; the combinatorial carrier for transition graphs.
/// Edge paths are signed 1-based edge indices.
class GraphMap {
public:
	GraphMap(int num_vertices, std::vector<std::pair<int, int>> edges,
	         std::vector<std::vector<int>> edge_images, int base_vertex)
	    : num_vertices_(num_vertices), edges_(std::move(edges)),
	      images_(std::move(edge_images)), base_(base_vertex)
	{
		if (num_vertices_ < 1)
			throw std::invalid_argument("graph needs at least one vertex");
		if (base_ < 0 || base_ >= num_vertices_)
			throw std::invalid_argument("base vertex out of range");
		for (auto& [u, w] : edges_)
			if (u < 0 || u >= num_vertices_ || w < 0 || w >= num_vertices_)
				throw std::invalid_argument("edge endpoint out of range");
		if (images_.size() != edges_.size())
			throw std::invalid_argument("need exactly one image path per edge");
		vertex_image_.assign(num_vertices_, -1);
		for (std::size_t e = 0; e < edges_.size(); ++e)
			check_image_path(static_cast<int>(e));
	}

	int num_vertices() const { return num_vertices_; }
	int num_edges() const { return static_cast<int>(edges_.size()); }
	int base_vertex() const { return base_; }
	int tail(int e) const { return edges_[e - 1].first; }
	int head(int e) const { return edges_[e - 1].second; }
	const std::vector<int>& image(int e) const { return images_[e - 1]; }
	int vertex_image(int v) const { return vertex_image_[v]; }

	/// Rank of the fundamental group: E - V + 1 for a connected graph.
	int pi1_rank() const { return num_edges() - num_vertices_ + 1; }

	/// The rose of a free-group automorphism: one vertex, loops for the
	/// generators, images straight from the automorphism.
	static GraphMap from_automorphism(const FreeAutomorphism& aut)
	{
		std::vector<std::pair<int, int>> edges(aut.rank(), {0, 0});
		std::vector<std::vector<int>> images;
		for (int i = 1; i <= aut.rank(); ++i)
			images.push_back(aut.image(i).letters());
		return GraphMap(1, std::move(edges), std::move(images), 0);
	}

private:
	int endpoint(int signed_edge, bool start) const
	{
		int e = std::abs(signed_edge);
		if (e < 1 || e > num_edges())
			throw std::invalid_argument("image path uses an edge out of range");
		bool forward = signed_edge > 0;
		return (start == forward) ? edges_[e - 1].first : edges_[e - 1].second;
	}

	void check_image_path(int e)
	{
		const auto& path = images_[e];
		if (path.empty())
			throw std::invalid_argument("edge image must be a nonempty edge path");
		for (std::size_t i = 0; i + 1 < path.size(); ++i)
			if (endpoint(path[i], false) != endpoint(path[i + 1], true))
				throw std::invalid_argument("image path is not a genuine edge path");
		int u = edges_[e].first, w = edges_[e].second;
		int iu = endpoint(path.front(), true), iw = endpoint(path.back(), false);
		if (vertex_image_[u] < 0)
			vertex_image_[u] = iu;
		else if (vertex_image_[u] != iu)
			throw std::invalid_argument("edge images disagree on a vertex image");
		if (vertex_image_[w] < 0)
			vertex_image_[w] = iw;
		else if (vertex_image_[w] != iw)
			throw std::invalid_argument("edge images disagree on a vertex image");
	}

	int num_vertices_;
	std::vector<std::pair<int, int>> edges_;
	std::vector<std::vector<int>> images_;
	int base_;
	std::vector<int> vertex_image_;
};

/// Graph-map file format:
///   vertices 2
///   base 0
///   edge a 0 1
///   edge b 1 1
///   image a ab
///   image b B
/// Edge names are single lowercase letters (or gN); image words use the
/// usual case convention for reversed traversal. '#' starts a comment.
inline GraphMap parse_graph_map_text(const std::string& text)
{
	std::istringstream is(text);
	std::string raw;
	int lineno = 0;
	int nv = -1, base = -1;
	std::map<std::string, int> edge_index;
	std::vector<std::pair<int, int>> edges;
	std::map<int, std::vector<int>> images;

	auto fail = [&](const std::string& what) { throw ParseError(lineno, 1, what); };

	while (std::getline(is, raw)) {
		++lineno;
		std::string line = raw.substr(0, raw.find('#'));
		std::istringstream ls(line);
		std::string tok;
		if (!(ls >> tok))
			continue;
		if (tok == "vertices") {
			if (!(ls >> nv) || nv < 1)
				fail("expected 'vertices N'");
		} else if (tok == "base") {
			if (!(ls >> base))
				fail("expected 'base V'");
		} else if (tok == "edge") {
			std::string name;
			int u, w;
			if (!(ls >> name >> u >> w))
				fail("expected 'edge name tail head'");
			if (edge_index.count(name))
				fail("edge '" + name + "' defined twice");
			edge_index[name] = static_cast<int>(edges.size()) + 1;
			edges.push_back({u, w});
		} else if (tok == "image") {
			std::string name, word;
			if (!(ls >> name >> word))
				fail("expected 'image name path'");
			auto it = edge_index.find(name);
			if (it == edge_index.end())
				fail("image for unknown edge '" + name + "'");
			std::vector<int> path;
			for (std::size_t i = 0; i < word.size(); ++i) {
				char ch = word[i];
				int sign = std::islower(static_cast<unsigned char>(ch)) ? 1 : -1;
				std::string nm(1, static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
				auto jt = edge_index.find(nm);
				if (jt == edge_index.end())
					fail(std::string("image path uses unknown edge '") + ch + "'");
				path.push_back(sign * jt->second);
			}
			images[it->second] = std::move(path);
		} else {
			fail("unknown directive '" + tok + "'");
		}
	}
	if (nv < 1)
		throw ParseError(lineno, 1, "missing 'vertices' line");
	if (base < 0)
		throw ParseError(lineno, 1, "missing 'base' line");
	std::vector<std::vector<int>> img_list;
	for (std::size_t e = 1; e <= edges.size(); ++e) {
		auto it = images.find(static_cast<int>(e));
		if (it == images.end())
			throw ParseError(lineno, 1, "missing image for an edge");
		img_list.push_back(it->second);
	}
	return GraphMap(nv, std::move(edges), std::move(img_list), base);
}

} // namespace homcov
