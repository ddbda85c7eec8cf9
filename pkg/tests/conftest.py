# Marks the test root so `import support` resolves from any test module.
