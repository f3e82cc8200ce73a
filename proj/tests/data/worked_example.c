int main() {
  int i;
  int j;
  for (i = 0; i < 10; ++i)
    for (j = i; j > 0; j -= 2)
      ;
  return 0;
}
