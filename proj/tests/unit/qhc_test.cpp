#include <doctest.h>

#include <random>
#include <set>

#include "cqhc/qhc.hpp"

using namespace cqhc;

namespace {

Syndrome syndrome_of_int(int r, int s) {
  BitVector bits(static_cast<std::size_t>(r));
  for (int j = 0; j < r; ++j)
    if ((s >> (r - 1 - j)) & 1) bits.set(j);
  return Syndrome{bits};
}

BitVector single(int n, int qubit_1based) {
  BitVector v(static_cast<std::size_t>(n));
  v.set(static_cast<std::size_t>(qubit_1based - 1));
  return v;
}

}  // namespace

TEST_SUITE("qhc") {
  TEST_CASE("construction parameters") {
    HammingCode steane(3);
    CHECK(steane.n() == 7);
    CHECK(steane.k() == 1);
    CHECK(steane.weight3_triples().size() == 7);
    CHECK(steane.x_stabilizers().size() == 8);

    const char* rows[3] = {"0001111", "0110011", "1010101"};
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 7; ++c)
        CHECK(steane.check_matrix().test(r, c) == (rows[r][c] == '1'));

    HammingCode h4(4);
    CHECK(h4.n() == 15);
    CHECK(h4.k() == 7);
    CHECK(h4.weight3_triples().size() == 35);

    HammingCode h5(5);
    CHECK(h5.n() == 31);
    CHECK(h5.k() == 21);

    CHECK_THROWS_AS(HammingCode(2), std::invalid_argument);
  }

  TEST_CASE("css and logical invariants") {
    for (int r : {3, 4, 5}) {
      HammingCode code(r);
      const BitMatrix& h = code.check_matrix();
      // H H^T = 0
      for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.rows(); ++j)
          CHECK_FALSE(parity_and(h.row(i), h.row(j)));
      for (int c = 0; c < code.k(); ++c) {
        CHECK(code.syndrome(code.logical_x()[c]).trivial());
        CHECK(code.syndrome(code.logical_z()[c]).trivial());
        CHECK(code.logical_x()[c].weight() == 3);
        for (int d = 0; d < code.k(); ++d)
          CHECK(parity_and(code.logical_z()[c], code.logical_x()[d]) == (c == d));
      }
    }
  }

  TEST_CASE("pinned logical basis") {
    HammingCode steane(3);
    CHECK(steane.logical_x()[0] == BitVector::from_indices(7, {0, 1, 2}));
    CHECK(steane.logical_z()[0] == steane.logical_x()[0]);

    // regression pin of the deterministic construction
    HammingCode h4(4);
    std::vector<std::vector<std::size_t>> expected = {
        {0, 1, 2}, {0, 3, 4}, {0, 5, 6}, {0, 7, 8}, {1, 3, 5}, {1, 7, 9}, {3, 7, 11}};
    for (int c = 0; c < 7; ++c)
      CHECK(h4.logical_x()[c] == BitVector::from_indices(15, expected[static_cast<std::size_t>(c)]));
  }

  TEST_CASE("stabilizer enumeration") {
    for (int r : {3, 4}) {
      HammingCode code(r);
      std::set<std::string> distinct;
      SpanBasis row_space;
      for (std::size_t j = 0; j < code.check_matrix().rows(); ++j)
        row_space.insert(code.check_matrix().row(j));
      CHECK(code.x_stabilizers().front().none());
      for (const auto& h : code.x_stabilizers()) {
        CHECK(code.syndrome(h).trivial());
        CHECK(row_space.contains(h));
        distinct.insert(h.to_string());
      }
      CHECK(distinct.size() == static_cast<std::size_t>(code.n()) + 1);
    }
  }

  TEST_CASE("triples cover every pair once") {
    HammingCode h4(4);
    std::set<std::pair<int, int>> covered;
    for (const auto& t : h4.weight3_triples()) {
      CHECK((t[0] ^ t[1] ^ t[2]) == 0);
      CHECK(t[0] < t[1]);
      CHECK(t[1] < t[2]);
      for (auto [x, y] : {std::pair{t[0], t[1]}, {t[0], t[2]}, {t[1], t[2]}})
        CHECK(covered.emplace(x, y).second);
    }
    CHECK(covered.size() == 15 * 14 / 2);
  }

  TEST_CASE("syndromes") {
    HammingCode h4(4);
    for (int q = 1; q <= 15; ++q) {
      Syndrome s = h4.syndrome(single(15, q));
      CHECK(h4.syndrome_qubit(s) == q);
    }
    CHECK(h4.syndrome(BitVector(15)).trivial());

    BitVector both = add(single(15, 1), single(15, 2));
    CHECK(h4.syndrome(both) == h4.syndrome(single(15, 3)));
    CHECK_THROWS_AS(h4.syndrome(BitVector(14)), std::invalid_argument);
  }

  TEST_CASE("lookup decoding") {
    HammingCode steane(3);
    CHECK(steane.lookup_decode(syndrome_of_int(3, 3)) == single(7, 3));
    CHECK(steane.lookup_decode(syndrome_of_int(3, 0)).none());

    HammingCode h4(4);
    for (int q = 1; q <= 15; ++q) {
      BitVector e = single(15, q);
      CHECK(h4.lookup_decode(h4.syndrome(e)) == e);
    }
  }

  TEST_CASE("logical_class") {
    HammingCode h4(4);
    for (const auto& h : h4.x_stabilizers()) CHECK(h4.logical_class(h).none());
    for (int j = 0; j < h4.k(); ++j) {
      BitVector cls = h4.logical_class(h4.logical_x()[static_cast<std::size_t>(j)]);
      CHECK(cls.weight() == 1);
      CHECK(cls.test(static_cast<std::size_t>(j)));
    }
    HammingCode steane(3);
    BitVector triple = BitVector::from_indices(7, {2, 4, 5});  // qubits 3, 5, 6
    CHECK(steane.logical_class(triple).any());
    CHECK_THROWS_AS(steane.logical_class(single(7, 1)), std::invalid_argument);
    // additivity on trivial-syndrome inputs
    BitVector sum = add(triple, steane.logical_x()[0]);
    CHECK(steane.logical_class(sum) ==
          add(steane.logical_class(triple), steane.logical_class(steane.logical_x()[0])));
  }

  TEST_CASE("coset_min") {
    HammingCode steane(3);
    CHECK(steane.coset_min(BitVector(7), BitVector(1)).weight == 0);
    BitVector one(1);
    one.set(0);
    CHECK(steane.coset_min(BitVector(7), one).weight == 3);

    HammingCode h4(4);
    BitVector delta = h4.logical_class(BitVector::from_indices(15, {0, 1, 2}));
    CosetMin cm = h4.coset_min(single(15, 1), delta);
    CHECK(cm.weight == 2);
    CHECK(cm.realization == BitVector::from_indices(15, {1, 2}));
    CHECK(h4.syndrome(cm.realization) == h4.syndrome(single(15, 1)));

    // invariance under stabilizer shifts of the base
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
      BitVector base(15);
      for (int i = 0; i < 15; ++i)
        if (rng() & 1) base.set(static_cast<std::size_t>(i));
      BitVector d(7);
      for (int i = 0; i < 7; ++i)
        if (rng() & 1) d.set(static_cast<std::size_t>(i));
      std::size_t w0 = h4.coset_min(base, d).weight;
      const auto& stab = h4.x_stabilizers()[rng() % 16];
      CHECK(h4.coset_min(add(base, stab), d).weight == w0);
    }
  }

  TEST_CASE("transfer candidates") {
    HammingCode steane(3);
    const auto& tc = steane.transfer_candidates();
    CHECK(tc.size() == 21);  // 7 triples, 3 rotations each
    for (std::size_t i = 1; i < tc.size(); ++i) {
      bool ordered = tc[i - 1].src < tc[i].src ||
                     (tc[i - 1].src == tc[i].src &&
                      (tc[i - 1].a < tc[i].a || (tc[i - 1].a == tc[i].a && tc[i - 1].b < tc[i].b)));
      CHECK(ordered);
    }
    for (const auto& t : tc) {
      CHECK((t.src ^ t.a ^ t.b) == 0);
      CHECK(t.a < t.b);
    }
  }
}
