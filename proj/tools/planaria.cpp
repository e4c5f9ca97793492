#include <cstdio>

int main() {
    std::fputs("planaria: not implemented yet\n", stderr);
    return 2;
}
