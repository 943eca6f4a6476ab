#include "dictionary.hpp"

#include <initializer_list>
#include <string_view>

namespace gencode::textops::detail {

namespace {

struct Entry {
  std::string_view pivot;
  std::string_view back;
  std::initializer_list<std::string_view> words;
};

// clang-format off
const std::initializer_list<Entry> kEntries = {
    {"zaehler", "counter", {"count", "counter", "cnt", "tally"}},
    {"summe", "sum", {"sum", "total", "tot", "acc", "accum"}},
    {"anzahl", "number", {"num", "number", "amount", "qty", "quantity"}},
    {"ergebnis", "result", {"result", "res", "outcome", "ret", "answer", "ans"}},
    {"wert", "value", {"value", "val", "v"}},
    {"index", "index", {"index", "idx", "pos", "position"}},
    {"laenge", "length", {"length", "len", "size", "sz"}},
    {"grenze", "limit", {"limit", "bound", "lim", "cap"}},
    {"maximal", "max", {"max", "maximum", "largest", "biggest", "best", "top"}},
    {"minimal", "min", {"min", "minimum", "smallest", "least", "lowest"}},
    {"ziffer", "digit", {"digit", "dig", "d"}},
    {"rest", "remainder", {"rem", "remainder", "mod", "modulus", "leftover"}},
    {"teiler", "divisor", {"div", "divisor", "factor", "fac"}},
    {"produkt", "product", {"prod", "product", "mul", "mult"}},
    {"potenz", "power", {"pow", "power", "exp", "exponent"}},
    {"basis", "base", {"base", "radix", "root"}},
    {"zahl", "n", {"n", "x", "k"}},
    {"schritt", "step", {"step", "stride", "inc", "increment", "delta"}},
    {"ende", "end", {"end", "stop", "finish", "last", "hi", "high"}},
    {"anfang", "start", {"start", "begin", "first", "lo", "low", "init"}},
    {"gerade", "even", {"even", "evens"}},
    {"ungerade", "odd", {"odd", "odds"}},
    {"primzahl", "prime", {"prime", "primes", "isprime"}},
    {"flagge", "flag", {"flag", "ok", "found", "done", "valid", "check"}},
    {"temporaer", "tmp", {"tmp", "temp", "t", "scratch"}},
    {"vorheriger", "prev", {"prev", "previous", "before", "old", "last"}},
    {"naechster", "next", {"next", "following", "after", "nxt", "new"}},
    {"aktuell", "cur", {"cur", "current", "curr", "now"}},
    {"zeichen", "text", {"text", "str", "string", "s", "msg", "message"}},
    {"haelfte", "half", {"half", "mid", "middle", "center"}},
    {"paar", "pair", {"pair", "couple", "twin"}},
    {"quadrat", "square", {"square", "sq", "sqr"}},
    {"differenz", "diff", {"diff", "difference", "gap", "dist", "distance"}},
    {"mittel", "avg", {"avg", "average", "mean"}},
    {"eingabe", "input", {"input", "inp", "in", "arg", "param"}},
    {"ausgabe", "output", {"output", "out", "emit"}},
    {"rechnen", "compute", {"compute", "calc", "calculate", "eval", "evaluate", "solve"}},
    {"pruefen", "test", {"test", "verify", "is", "has"}},
    {"finden", "find", {"find", "search", "seek", "locate", "lookup"}},
    {"zaehlen", "count", {"counting", "enumerate", "tallying"}},
    {"helfer", "helper", {"helper", "aux", "util", "utility", "support"}},
    {"haupt", "main", {"main", "run", "entry", "go"}},
    {"fibonacci", "fib", {"fib", "fibo", "fibonacci"}},
    {"fakultaet", "fact", {"fact", "factorial", "fac_n"}},
    {"teilbar", "divisible", {"divisible", "divides", "multiple"}},
    {"umgekehrt", "reverse", {"reverse", "rev", "reversed", "backwards", "flip"}},
    {"ziel", "target", {"target", "goal", "want", "expected"}},
    {"schluessel", "key", {"key", "id", "code"}},
    {"summand", "term", {"term", "addend", "item", "elem", "element"}},
    {"runde", "round", {"round", "iter", "iteration", "pass", "loop"}},
    {"zeile", "row", {"row", "line", "r"}},
    {"spalte", "col", {"col", "column", "c"}},
    {"faktor", "coef", {"coef", "coefficient", "weight", "w", "scale"}},
    {"stelle", "place", {"place", "slot", "spot"}},
    {"gesamt", "all", {"all", "whole", "full"}},
    {"wahr", "yes", {"yes", "truth"}},
    {"klein", "small", {"small", "tiny", "little", "short"}},
    {"gross", "big", {"big", "large", "huge", "long"}},
};
// clang-format on

Dictionary build() {
  Dictionary d;
  for (const Entry& e : kEntries) {
    d.backward.emplace(std::string(e.pivot), std::string(e.back));
    for (std::string_view w : e.words) d.forward.emplace(std::string(w), std::string(e.pivot));
  }
  return d;
}

}  // namespace

const Dictionary& stub_dictionary() {
  static const Dictionary dict = build();
  return dict;
}

}  // namespace gencode::textops::detail
