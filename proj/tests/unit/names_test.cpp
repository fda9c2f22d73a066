#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "picalc/action.hpp"
#include "picalc/parse.hpp"
#include "picalc/relabelling.hpp"

using namespace picalc;

namespace {
const Name x = Name::pub("x"), y = Name::pub("y"), z = Name::pub("z"), v = Name::pub("v");
const Name p0 = Name::priv();

std::vector<Name> sample() {
    std::vector<Name> out{x, y, z, v, Name::pub("s"), Name::pub("_0")};
    for (int i = 1; i <= 4; ++i)
        out.push_back(Name::spare(i));
    for (std::string tags : {"", "l", "r", "e", "lr", "elr"})
        for (int primes = 0; primes < 3; ++primes)
            out.push_back(Name::priv(tags, primes));
    return out;
}
} // namespace

TEST_CASE("names print in their three forms and order by sort first") {
    CHECK(x.str() == "x");
    CHECK(Name::spare(3).str() == "s3");
    CHECK(Name::priv("lr", 2).str() == "{lr}p''");
    CHECK(p0.str() == "{}p");
    CHECK(x < Name::spare(1));
    CHECK(Name::spare(9) < p0);
    CHECK(Name::pub("a") < Name::pub("b"));
}

TEST_CASE("invalid names are rejected") {
    CHECK_THROWS(Name::spare(0));
    CHECK_THROWS(Name::priv("q"));
    CHECK(looks_like_spare("s12"));
    CHECK_FALSE(looks_like_spare("sx"));
}

TEST_CASE("fresh names avoid the given set") {
    NameSet used{x, reserved_name(0), reserved_name(1)};
    Name f = fresh_name(used);
    CHECK_FALSE(used.contains(f));
    CHECK(f == reserved_name(2));
    CHECK(f.is_plain());
}

TEST_CASE("apply on the documented cases") {
    CHECK(Relabelling::tag_l().apply(p0) == Name::priv("l", 0));
    CHECK(Relabelling::tag_l().apply(x) == x);
    CHECK(Relabelling::pnu(y).apply(y) == p0);
    CHECK(Relabelling::pnu(y).apply(Name::priv("", 1)) == y);
    auto sub = Relabelling::subs({z}, {y});
    CHECK(sub.apply(Name::spare(1)) == y);
    CHECK(sub.apply(Name::spare(2)) == Name::spare(1));
    CHECK(sub.apply(y) == z);
    for (const auto& n : sample())
        CHECK(Relabelling().apply(n) == n);
    CHECK(Relabelling().is_identity());
}

TEST_CASE("preimage on the documented cases") {
    CHECK(Relabelling::tag_l().preimage(Name::priv("l", 0)) == std::vector<Name>{p0});
    CHECK(Relabelling::subs({z}, {y}).preimage(y) == std::vector<Name>{Name::spare(1)});
    CHECK(Relabelling::tag_e().preimage(x) == std::vector<Name>{x});
    // tags are bijective: untagged words absorb a prime
    CHECK(Relabelling::tag_l().preimage(Name::priv("r", 0)) == std::vector<Name>{Name::priv("r", 1)});
}

TEST_CASE("apply and preimage are mutually inverse on a sample") {
    std::vector<Relabelling> rels{Relabelling::tag_l(),
                                  Relabelling::tag_r(),
                                  Relabelling::tag_e(),
                                  Relabelling::pnu(y),
                                  Relabelling::subs({z}, {y}),
                                  Relabelling::subs({v, v}, {x, y}),
                                  Relabelling::finite_map({{x, y}, {y, x}}),
                                  Relabelling::shift("x")};
    for (const auto& rel : rels) {
        CAPTURE(rel.str());
        for (const auto& n : sample()) {
            CAPTURE(n.str());
            for (const auto& m : rel.preimage(n))
                CHECK(rel.apply(m) == n);
            auto pre = rel.preimage(rel.apply(n));
            CHECK(std::find(pre.begin(), pre.end(), n) != pre.end());
            if (rel.injective())
                CHECK(pre.size() == 1);
        }
    }
}

TEST_CASE("injectivity flags") {
    CHECK(Relabelling::tag_l().injective());
    CHECK(Relabelling::pnu(y).injective());
    CHECK(Relabelling::subs({}, {}).injective());
    // y and z both land on z
    CHECK_FALSE(Relabelling::subs({z}, {y}).injective());
    CHECK_THROWS_AS(Relabelling::finite_map({{x, y}, {x, z}}), std::invalid_argument);
}

TEST_CASE("matching sequences") {
    CHECK(prepend_match(MatchSeq{}, x, x).empty());
    CHECK(prepend_match(MatchSeq{}, x, v).str() == "[x=v]");
    MatchSeq ab = prepend_match(MatchSeq{}, Name::pub("a"), Name::pub("b"));
    CHECK(prepend_match(ab, x, v).str() == "[x=v][a=b]");
    CHECK(ab.mentions(Name::pub("a")));
}

TEST_CASE("apply_to_action") {
    Action out = Action::free_out({}, x, y);
    CHECK(apply_to_action(Relabelling::finite_map({{y, v}}), out) == Action::free_out({}, x, v));
    Action guarded = Action::silent(prepend_match({}, x, v));
    CHECK(apply_to_action(Relabelling::finite_map({{v, x}}), guarded) == Action::silent());
    Action in = Action::free_in({}, p0, z);
    CHECK(apply_to_action(Relabelling::tag_l(), in) == Action::free_in({}, Name::priv("l", 0), z));
}

TEST_CASE("action text and the observation function") {
    CHECK(Action::silent().str() == "tau");
    CHECK(Action::free_out({}, x, y).str() == "x!y");
    CHECK(Action::bound_out({}, x, y).str() == "x!(y)");
    CHECK(Action::free_in({}, x, y).str() == "x?y");
    CHECK(Action::bound_in({}, x, y).str() == "x(y)");
    CHECK(Action::silent(prepend_match({}, x, v)).str() == "[x=v]tau");
    CHECK(Action::free_out({}, x, y).observe() == Barb{x, true});
    CHECK(Action::free_in({}, x, y).observe() == Barb{x, false});
    CHECK_FALSE(Action::silent().observe());
    CHECK_FALSE(Action::free_in({}, p0, y).observe());
    CHECK_FALSE(Action::free_out(prepend_match({}, x, v), x, y).observe());
    CHECK(parse_action("[x=v]x!y") == Action::free_out(prepend_match({}, x, v), x, y));
}

TEST_CASE("relabelling text round-trips") {
    for (std::string text : {"l", "r", "e", "p_y", "z/y", "u,v/x,y", "map: a->b, b->a", "shift x", "shift x 2"}) {
        CAPTURE(text);
        Relabelling rel = parse_relabelling(text);
        CHECK(parse_relabelling(rel.str()) == rel);
    }
}
