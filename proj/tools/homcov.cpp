#include "homcov/search.hpp"
#include "homcov/serialize.hpp"
#include "homcov/shadow.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace homcov;

namespace {

std::string slurp(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open '" + path + "'");
	std::ostringstream os;
	os << in.rdbuf();
	return os.str();
}

void emit(const std::string& text, const std::string& out_path)
{
	if (out_path.empty()) {
		std::cout << text;
		return;
	}
	std::ofstream out(out_path);
	if (!out)
		throw std::runtime_error("cannot write '" + out_path + "'");
	out << text;
}

ParsedAutomorphism load_aut(const std::string& path)
{
	return parse_automorphism_text(slurp(path));
}

IntMatrix load_matrix(const std::string& path)
{
	std::istringstream is(slurp(path));
	std::size_t rows = 0, cols = 0;
	if (!(is >> rows >> cols))
		throw std::runtime_error("matrix file needs a 'rows cols' header");
	IntMatrix m(rows, cols);
	for (std::size_t i = 0; i < rows; ++i)
		for (std::size_t j = 0; j < cols; ++j) {
			std::string v;
			if (!(is >> v))
				throw std::runtime_error("matrix file is truncated");
			m(i, j) = Int(v);
		}
	return m;
}

FiniteAbelianQuotient load_quotient(const std::string& path)
{
	std::istringstream is(slurp(path));
	return quotient_from_text(is);
}

CoinvariantLattice load_lattice(const std::string& path)
{
	std::istringstream is(slurp(path));
	std::string tag;
	int free_rank = 0, ambient = 0;
	if (!(is >> tag >> free_rank >> ambient) || tag != "lattice")
		throw std::runtime_error("lattice file needs a 'lattice <free> <ambient>' header");
	CoinvariantLattice lat;
	lat.free_rank = free_rank;
	lat.ambient_rank = ambient;
	lat.projection = IntMatrix(free_rank, ambient);
	for (int i = 0; i < free_rank; ++i)
		for (int j = 0; j < ambient; ++j) {
			std::string v;
			if (!(is >> v))
				throw std::runtime_error("lattice file is truncated");
			lat.projection(i, j) = Int(v);
		}
	return lat;
}

std::vector<Rat> parse_rotations(const std::string& text)
{
	std::vector<Rat> out;
	std::istringstream is(text);
	std::string item;
	while (std::getline(is, item, ','))
		out.push_back(parse_rational(item));
	return out;
}

std::vector<std::complex<double>> parse_complex_point(const std::string& text)
{
	std::vector<std::complex<double>> out;
	std::istringstream is(text);
	std::string item;
	while (std::getline(is, item, ',')) {
		auto colon = item.find(':');
		double re = std::stod(item.substr(0, colon));
		double im = colon == std::string::npos ? 0.0 : std::stod(item.substr(colon + 1));
		out.push_back({re, im});
	}
	return out;
}

std::string matrix_text(const IntMatrix& m)
{
	std::ostringstream os;
	os << m;
	return os.str();
}

std::string cx_to_string(const std::complex<double>& z)
{
	std::ostringstream os;
	os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
	return os.str();
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"homological representations of free-group automorphisms "
	             "over finite abelian covers"};
	app.require_subcommand(1);

	std::string aut_path, out_path, quotient_path, lattice_path, graph_path;
	std::string rotations_text, complex_text, rep_path, blocks_mode = "none";
	std::vector<std::string> gen_paths, matrix_paths, path_files;
	int ratio_max = 6, kmax = 10, depth = 3;
	std::size_t per_level = 64, word_budget = 64;
	long long modulus_cap = 7;
	std::vector<long long> primes = {2, 3, 5};
	std::string pairs_text;
	bool pretty = false;
	std::string dot_path;

	auto* validate = app.add_subcommand("validate", "parse and check an automorphism file");
	validate->add_option("file", aut_path)->required();

	auto* abelianize = app.add_subcommand("abelianize", "print the abelianized matrix");
	abelianize->add_option("file", aut_path)->required();
	abelianize->add_option("--out", out_path);

	auto* magnus = app.add_subcommand("magnus", "print the Magnus matrix");
	magnus->add_option("file", aut_path)->required();
	magnus->add_flag("--pretty", pretty, "human-readable entries");
	magnus->add_option("--out", out_path);

	auto* specialize_cmd = app.add_subcommand("specialize", "specialize the Magnus matrix");
	specialize_cmd->add_option("file", aut_path)->required();
	specialize_cmd->add_option("--at", rotations_text,
	                           "rotation numbers q1,q2,... (exact roots of unity)");
	specialize_cmd->add_option("--at-complex", complex_text,
	                           "complex point re:im,re:im,... (floating backend)");
	specialize_cmd->add_option("--out", out_path);

	auto* cover_cmd = app.add_subcommand("cover", "build a cover and dump representations");
	cover_cmd->add_option("--quotient", quotient_path)->required();
	cover_cmd->add_option("--rep", rep_path, "automorphism to represent on the cover");
	cover_cmd->add_option("--blocks", blocks_mode,
	                      "block decomposition backend: exact or float");
	cover_cmd->add_option("--dot", dot_path, "write the cover graph in DOT format");
	cover_cmd->add_option("--out", out_path);

	auto* kron = app.add_subcommand("kronecker", "exact root-of-unity spectrum test");
	kron->add_option("--matrix", matrix_paths)->required();
	kron->add_option("--out", out_path);

	auto* ratio = app.add_subcommand("ratio", "eigenvalue-ratio degeneracy test");
	ratio->add_option("--matrix", matrix_paths)->required();
	ratio->add_option("--max", ratio_max);

	auto* solv = app.add_subcommand("solvability", "spectral virtual-solvability probe");
	solv->add_option("--matrix", matrix_paths)->required();
	solv->add_option("--depth", depth);
	solv->add_option("--word-budget", word_budget);

	auto* search_cmd = app.add_subcommand("search", "tower search for off-circle eigenvalues");
	search_cmd->add_option("target", aut_path)->required();
	search_cmd->add_option("--gens", gen_paths)->required();
	search_cmd->add_option("--primes", primes);
	search_cmd->add_option("--depth", depth);
	search_cmd->add_option("--per-level", per_level);
	search_cmd->add_option("--modulus-cap", modulus_cap);
	search_cmd->add_option("--out", out_path);

	auto* certify = app.add_subcommand("certify", "solvability probe along a cover path");
	certify->add_option("--gens", gen_paths)->required();
	certify->add_option("--path", path_files, "quotient files, outermost first");
	certify->add_option("--depth", depth);

	auto* trans = app.add_subcommand("transition", "transition graph of a graph map");
	trans->add_option("file", graph_path)->required();
	trans->add_option("--lattice", lattice_path);
	trans->add_option("--dot", dot_path);
	trans->add_option("--out", out_path);

	auto* shadow_cmd = app.add_subcommand("shadow", "equivariant shadow of a graph map");
	shadow_cmd->add_option("file", graph_path)->required();
	shadow_cmd->add_option("--lattice", lattice_path);
	shadow_cmd->add_option("--kmax", kmax);
	shadow_cmd->add_option("--out", out_path);

	auto* tower_cmd = app.add_subcommand("tower", "iterated (p,q)-covers");
	tower_cmd->add_option("--gens", gen_paths)->required();
	tower_cmd->add_option("--pairs", pairs_text, "prime pairs like 2,2;3,3")->required();
	tower_cmd->add_option("--depth", depth);
	tower_cmd->add_option("--out", out_path);

	CLI11_PARSE(app, argc, argv);

	try {
		if (*validate) {
			auto parsed = load_aut(aut_path);
			std::cout << "ok rank " << parsed.aut.rank()
			          << (parsed.aut.certified() ? " certified" : " uncertified")
			          << "\n";
			return 0;
		}
		if (*abelianize) {
			emit(matrix_text(load_aut(aut_path).aut.abelianized()), out_path);
			return 0;
		}
		if (*magnus) {
			auto m = magnus_matrix(load_aut(aut_path).aut);
			std::ostringstream os;
			os << "magnus " << m.rank << "\n";
			for (int i = 1; i <= m.rank; ++i)
				for (int j = 1; j <= m.rank; ++j) {
					os << "entry " << i << " " << j << "\n";
					if (pretty)
						os << laurent_to_pretty(m.at(i, j)) << "\n";
					else
						os << laurent_to_text(m.at(i, j));
				}
			emit(os.str(), out_path);
			return 0;
		}
		if (*specialize_cmd) {
			auto m = magnus_matrix(load_aut(aut_path).aut);
			std::ostringstream os;
			if (!rotations_text.empty()) {
				auto rot = parse_rotations(rotations_text);
				auto spec = specialize_magnus_exact(m, rot);
				os << "exact cyclotomic specialization\n";
				for (int i = 0; i < m.rank; ++i) {
					for (int j = 0; j < m.rank; ++j)
						os << (j ? " " : "")
						   << cx_to_string(spec(i, j).to_complex());
					os << "\n";
				}
			} else if (!complex_text.empty()) {
				auto spec = specialize_magnus(m, parse_complex_point(complex_text));
				os << "floating specialization\n";
				for (int i = 0; i < m.rank; ++i) {
					for (int j = 0; j < m.rank; ++j)
						os << (j ? " " : "") << cx_to_string(spec(i, j));
					os << "\n";
				}
			} else
				throw std::runtime_error("need --at or --at-complex");
			emit(os.str(), out_path);
			return 0;
		}
		if (*cover_cmd) {
			auto q = load_quotient(quotient_path);
			CoverGraph cover(q);
			std::ostringstream os;
			os << cover_to_text(cover);
			if (!rep_path.empty()) {
				auto aut = load_aut(rep_path).aut;
				auto lifted = lift_automorphism(aut, q);
				if (!lifted) {
					std::cerr << "NotLiftable: the kernel is not invariant\n";
					return 2;
				}
				os << "deck-action "
				   << (lifted->deck_action_trivial() ? "trivial" : "nontrivial")
				   << "\n";
				auto chain = chain_action(*lifted);
				os << "chain-matrix\n" << chain.entries;
				os << "homology-matrix\n" << homology_rep(chain).matrix;
				if (blocks_mode != "none") {
					auto bd = block_decompose(chain, *lifted, blocks_mode == "exact");
					os << "blocks " << bd.blocks.size() << " residual "
					   << bd.residual
					   << (bd.exact ? (bd.exact_match ? " exact-match" : " exact-mismatch")
					                : "")
					   << "\n";
					auto rot_str = [&](std::size_t idx) {
						std::string s = "(";
						const auto& rot = bd.characters[idx].rotations();
						for (std::size_t i = 0; i < rot.size(); ++i)
							s += (i ? "," : "") + to_string(rot[i]);
						return s + ")";
					};
					for (const auto& [key, block] : bd.blocks) {
						os << "block row-char " << rot_str(key.first)
						   << " col-char " << rot_str(key.second) << "\n";
						for (std::size_t i = 0; i < block.rows(); ++i) {
							for (std::size_t j = 0; j < block.cols(); ++j)
								os << (j ? " " : "")
								   << cx_to_string(block(i, j));
							os << "\n";
						}
					}
				}
			}
			if (!dot_path.empty())
				emit(cover_to_dot(cover), dot_path);
			emit(os.str(), out_path);
			return 0;
		}
		if (*kron) {
			std::ostringstream os;
			for (const auto& p : matrix_paths)
				os << spectral_report_to_text(kronecker_test(load_matrix(p)));
			emit(os.str(), out_path);
			return 0;
		}
		if (*ratio) {
			for (const auto& p : matrix_paths) {
				auto set = ratio_degeneracy_test(load_matrix(p), ratio_max);
				std::cout << "degenerate-powers";
				for (int k : set)
					std::cout << " " << k;
				std::cout << "\n";
			}
			return 0;
		}
		if (*solv) {
			std::vector<IntMatrix> gens;
			for (const auto& p : matrix_paths)
				gens.push_back(load_matrix(p));
			SolvabilityBudget budget;
			budget.depth_max = depth;
			budget.word_budget = word_budget;
			auto v = solvability_probe(gens, budget);
			std::cout << solvability_kind_name(v.kind) << "\n";
			if (v.kind == SolvabilityKind::NonsolvableWitness) {
				std::cout << "witness-word " << word_to_string(v.witness_word)
				          << " depth " << v.witness_depth << "\n";
				std::cout << spectral_report_to_text(v.witness_report);
			}
			return v.kind == SolvabilityKind::Inconclusive ? 2 : 0;
		}
		if (*search_cmd) {
			SearchConfig cfg;
			cfg.primes = primes;
			cfg.max_depth = depth;
			cfg.max_covers_per_level = per_level;
			cfg.modulus_cap = modulus_cap;
			auto target = load_aut(aut_path).aut;
			std::vector<FreeAutomorphism> gens;
			for (const auto& p : gen_paths)
				gens.push_back(load_aut(p).aut);
			auto report = search_off_circle(target, gens, cfg);
			emit(search_report_to_text(report), out_path);
			return report.witness_found ? 0 : 2;
		}
		if (*certify) {
			std::vector<FreeAutomorphism> gens;
			for (const auto& p : gen_paths)
				gens.push_back(load_aut(p).aut);
			std::vector<FiniteAbelianQuotient> path;
			for (const auto& p : path_files)
				path.push_back(load_quotient(p));
			SolvabilityBudget budget;
			budget.depth_max = depth;
			auto v = certify_image(gens, path, budget);
			std::cout << solvability_kind_name(v.kind) << "\n";
			if (v.kind == SolvabilityKind::NonsolvableWitness)
				std::cout << spectral_report_to_text(v.witness_report);
			return v.kind == SolvabilityKind::Inconclusive ? 2 : 0;
		}
		if (*trans || *shadow_cmd) {
			auto gm = parse_graph_map_text(slurp(graph_path));
			CoinvariantLattice lat;
			if (!lattice_path.empty())
				lat = load_lattice(lattice_path);
			else {
				// Default: the full homology lattice of the graph.
				lat.ambient_rank = gm.pi1_rank();
				lat.free_rank = gm.pi1_rank();
				lat.projection = IntMatrix::identity(gm.pi1_rank());
			}
			auto tg = transition_graph(gm, lat);
			std::ostringstream os;
			if (*trans) {
				os << "transition vertices " << tg.num_vertices << " edges "
				   << tg.edges.size() << " lattice-rank " << tg.lattice_rank << "\n";
				for (const auto& e : tg.edges) {
					os << "edge " << e.from << " -> " << e.to << " sign "
					   << e.sign << " t";
					for (const auto& t : e.translation)
						os << " " << t;
					os << "\n";
				}
				if (!dot_path.empty())
					emit(transition_to_dot(tg), dot_path);
			} else {
				auto shadow = equivariant_shadow(tg);
				os << polytope_to_text(shadow);
				for (int k = 1; k <= kmax; ++k) {
					bool inside = true;
					for (const auto& p : trace_support(tg, k))
						inside = inside && shadow.contains(p);
					os << "S_" << k << (inside ? " inside" : " OUTSIDE") << "\n";
				}
				for (std::size_t i = 0; i < shadow.vertices.size(); ++i) {
					auto sub = vertex_subgraph(tg, shadow, shadow.vertices[i]);
					auto stab = stability_probe(sub, kmax);
					os << "vertex " << i << " subgraph-edges " << sub.edges.size()
					   << " nonzero-k";
					for (int k : stab.nonzero_k)
						os << " " << k;
					if (stab.period)
						os << " period " << *stab.period;
					os << "\n";
				}
			}
			emit(os.str(), out_path);
			return 0;
		}
		if (*tower_cmd) {
			std::vector<FreeAutomorphism> gens;
			for (const auto& p : gen_paths)
				gens.push_back(load_aut(p).aut);
			std::vector<std::pair<long long, long long>> pairs;
			std::istringstream ps(pairs_text);
			std::string item;
			while (std::getline(ps, item, ';')) {
				auto comma = item.find(',');
				if (comma == std::string::npos)
					throw std::runtime_error("pairs must look like 2,2;3,3");
				pairs.push_back({std::stoll(item.substr(0, comma)),
				                 std::stoll(item.substr(comma + 1))});
			}
			int d = std::min<int>(depth, static_cast<int>(pairs.size()));
			auto tower = pq_tower(gens, pairs, d);
			std::ostringstream os;
			for (std::size_t i = 0; i < tower.levels.size(); ++i) {
				const auto& lvl = tower.levels[i];
				os << "level " << i << " rank "
				   << (lvl.gens.empty() ? lvl.cover.homology_rank()
				                        : lvl.gens.front().rank())
				   << " degree " << lvl.cover.degree() << " gens "
				   << lvl.gens.size() << " deck "
				   << (lvl.deck_action_verified_trivial ? "trivial" : "nontrivial")
				   << "\n";
			}
			if (tower.failure)
				os << "failure " << tower_failure_name(*tower.failure) << " at level "
				   << tower.failed_level << "\n";
			emit(os.str(), out_path);
			return tower.failure ? 2 : 0;
		}
	} catch (const ParseError& e) {
		std::cerr << "input error: " << e.what() << "\n";
		return 1;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	}
	return 0;
}
