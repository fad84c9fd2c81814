#include <iostream>
int main() { std::cout << "wzkit placeholder\n"; }
