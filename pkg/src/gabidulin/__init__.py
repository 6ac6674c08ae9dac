"""Fast linearized-polynomial arithmetic and Gabidulin codes."""
