#include <doctest.h>

#include <random>

#include "cqhc/decoder.hpp"

using namespace cqhc;

TEST_SUITE("decoder_local") {
  TEST_CASE("no error, no recovery") {
    ConcatCode code(Profile::parse("15x15"));
    DecodeOutcome out = run_decode(code, BitVector(225), DecoderKind::Local);
    CHECK(out.recovery_weight == 0);
    CHECK_FALSE(out.failure);
  }

  TEST_CASE("weight-4 pattern: recovery weight 5 and failure") {
    ConcatCode code(Profile::parse("15x15"));
    BitVector err = structured_failure_pattern(code, {{{1, 2}}, {{1, 2}}});
    CHECK(err == BitVector::from_indices(225, {0, 1, 15, 16}));
    DecodeOutcome out = run_decode(code, err, DecoderKind::Local);
    CHECK(out.recovery_weight == 5);
    CHECK(out.failure);
  }

  TEST_CASE("every single-qubit error is corrected") {
    ConcatCode code(Profile::parse("15x15"));
    DecodeSession session(code);
    SyndromeSource source(code, session);
    BitVector err(225);
    for (std::size_t q = 0; q < 225; ++q) {
      err.clear();
      err.set(q);
      session.reset();
      source.set_error(err);
      decode(code, source, session, DecoderKind::Local);
      CHECK_FALSE(is_failure(code, err, session));
    }
  }

  TEST_CASE("two errors inside one block are corrected through level 2") {
    ConcatCode code(Profile::parse("15x15"));
    BitVector err(225);
    err.set(code.flat({4, 2}));
    err.set(code.flat({4, 9}));
    DecodeOutcome out = run_decode(code, err, DecoderKind::Local);
    CHECK_FALSE(out.failure);
    CHECK(out.recovery == err);
  }

  TEST_CASE("structured patterns") {
    ConcatCode code(Profile::parse("15x15"));
    BitVector fig = structured_failure_pattern(code, {{{3, 7}, {2, 9}}});
    CHECK(fig.weight() == 4);
    CHECK(run_decode(code, fig, DecoderKind::Local).failure);

    ConcatCode steane3(Profile::parse("7x7x7"));
    BitVector w8 = structured_failure_pattern(steane3, {{{1, 2}, {3, 4}, {5, 6}}});
    CHECK(w8.weight() == 8);

    CHECK_THROWS_AS(structured_failure_pattern(code, {{{1, 1}, {1, 2}}}), std::invalid_argument);
    CHECK_THROWS_AS(structured_failure_pattern(code, {{{0, 2}, {1, 2}}}), std::invalid_argument);
    CHECK_THROWS_AS(structured_failure_pattern(code, {{{1, 2}}}), std::invalid_argument);
  }

  TEST_CASE("determinism") {
    ConcatCode code(Profile::parse("15x15"));
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      BitVector err(225);
      for (int i = 0; i < 8; ++i) err.set(rng() % 225);
      DecodeOutcome a = run_decode(code, err, DecoderKind::Local);
      DecodeOutcome b = run_decode(code, err, DecoderKind::Local);
      CHECK(a.recovery == b.recovery);
      CHECK(a.failure == b.failure);
    }
  }

  TEST_CASE("trace records lookups") {
    ConcatCode code(Profile::parse("15x15"));
    BitVector err = structured_failure_pattern(code, {{{1, 2}}, {{1, 2}}});
    DecodeTrace trace;
    run_decode(code, err, DecoderKind::Local, &trace);
    CHECK(trace.recovery_weight == 5);
    CHECK(trace.failure);
    CHECK(trace.transfers.empty());
    int level1 = 0, level2 = 0;
    for (const auto& s : trace.syndromes) {
      if (s.level == 1) {
        ++level1;
        CHECK(s.qubit == 3);
      } else {
        ++level2;
        CHECK(s.level == 2);
        CHECK(s.qubit == 3);
      }
    }
    CHECK(level1 == 2);
    CHECK(level2 == 1);  // the lifted pattern reads out as a single class bit
  }
}
