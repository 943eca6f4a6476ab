#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gencode/ir/lang.hpp"

namespace fixtures {

// Prints the even numbers in 1..10 and returns how many there were.
inline const std::string kEvenJava =
    "int main() {\n"
    "    int count = 0;\n"
    "    for (int i = 1; i <= 10; i = i + 1) {\n"
    "        if (i % 2 == 0) {\n"
    "            System.out.println(i);\n"
    "            count = count + 1;\n"
    "        }\n"
    "    }\n"
    "    return count;\n"
    "}\n";

inline const std::string kEvenPython =
    "def main():\n"
    "    count = 0\n"
    "    for i in range(1, 11):\n"
    "        if i % 2 == 0:\n"
    "            print(i)\n"
    "            count = count + 1\n"
    "    return count\n";

// Helper plus entry; exercises most statement kinds.
inline const std::string kRichJava =
    "int limit = 7;\n"
    "\n"
    "int helper(int a, int b) {\n"
    "    int s = 0;\n"
    "    while (a > 0) {\n"
    "        s = s + a % 10;\n"
    "        a = a / 10;\n"
    "    }\n"
    "    return s + b;\n"
    "}\n"
    "\n"
    "int main(int n) {\n"
    "    int total = 0;\n"
    "    int flag = 3;\n"
    "    if (n > limit) {\n"
    "        n = limit;\n"
    "    } else if (n < 0) {\n"
    "        n = 0;\n"
    "    }\n"
    "    for (int i = 0; i < n; i = i + 1) {\n"
    "        total = helper(i * 13, total);\n"
    "        switch (i % 3) {\n"
    "            case 0:\n"
    "                flag = flag + 1;\n"
    "                break;\n"
    "            default:\n"
    "                flag = flag - 1;\n"
    "        }\n"
    "    }\n"
    "    String tag = \"t\" + flag;\n"
    "    boolean big = total > 20;\n"
    "    int result = total * 2 - flag;\n"
    "    return result;\n"
    "}\n";

inline const std::string kRichPython =
    "limit = 7\n"
    "\n"
    "def helper(a, b):\n"
    "    s = 0\n"
    "    while a > 0:\n"
    "        s = s + a % 10\n"
    "        a = a // 10\n"
    "    return s + b\n"
    "\n"
    "def main(n):\n"
    "    total = 0\n"
    "    flag = 3\n"
    "    if n > limit:\n"
    "        n = limit\n"
    "    elif n < 0:\n"
    "        n = 0\n"
    "    for i in range(n):\n"
    "        total = helper(i * 13, total)\n"
    "        if i % 3 == 0:\n"
    "            flag = flag + 1\n"
    "        else:\n"
    "            flag = flag - 1\n"
    "    tag = \"t\"\n"
    "    big = total > 20 and not flag < 0\n"
    "    result = total * 2 - flag\n"
    "    return result\n";

inline std::vector<std::pair<std::string, gencode::ir::Lang>> all_sources() {
  using gencode::ir::Lang;
  return {{kEvenJava, Lang::JavaLite},
          {kEvenPython, Lang::PyLite},
          {kRichJava, Lang::JavaLite},
          {kRichPython, Lang::PyLite}};
}

}  // namespace fixtures
