#include <iostream>

int main() {
    std::cout << "wilsonkit CLI placeholder\n";
    return 0;
}
