// Signatures and problems from the worked examples.
#pragma once

namespace termlat::testing {

inline constexpr const char* kMixedSignature = R"(# a, b, c, d constants; f, g, l binary; h ternary
sim a/0 b/0 : 0.7
sim c/0 d/0 : 0.6
sim f/2 g/2 : 0.9 [1->2, 2->1]
sim l/2 h/3 : 0.8 [1->2, 2->3]
)";

inline constexpr const char* kMixedLeft = "h(X,g(Y,b),f(Y,c))";
inline constexpr const char* kMixedRight = "l(f(a,Z),g(d,c))";

inline constexpr const char* kGiftSignature = R"(sim violet/0 lilac/0 : 0.7
sim chocolate/0 candy/0 : 0.6
sim pair/2 couple/2 : 0.9 [1->2, 2->1]
sim smallgiftbag/2 smallgiftbox/3 : 0.8 [1->2, 2->3]
)";

inline constexpr const char* kGiftLeft =
    "smallgiftbox(X, couple(Y, lilac), pair(Y, chocolate))";
inline constexpr const char* kGiftRight = "smallgiftbag(pair(violet, Z), couple(candy, chocolate))";

inline constexpr const char* kWeakGenSignature = "sim f/2 g/2 : 0.9\n";
inline constexpr const char* kWeakGenLeft = "h(f(a,X1),g(X1,b),f(Y1,Y1))";
inline constexpr const char* kWeakGenRight = "h(X2,X2,g(c,d))";

}  // namespace termlat::testing
